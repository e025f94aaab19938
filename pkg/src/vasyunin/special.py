"""Kernels and constants consumed by the rest of the package.

The central object is the smooth kernel

    E_n(t) = 1/(n t) - 1/(e^{n t} - 1),

which is the mean of the fractional part of an exponential variable with
rate ``n t``.  It is evaluated in three regimes to avoid the catastrophic
cancellation of the naive difference near ``n t = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from vasyunin.errors import DomainError

if TYPE_CHECKING:
    from vasyunin.quadrature import IntegralEstimate

EULER_GAMMA = 0.57721566490153286061
LOG_TWO_PI = 1.8378770664093454836
C_CLOSED = 0.5 * (LOG_TWO_PI - EULER_GAMMA)

# B_{2k} / (2k)! for k = 1..10
_BERNOULLI_RATIOS = (
    8.3333333333333333333e-2,
    -1.3888888888888888889e-3,
    3.3068783068783068783e-5,
    -8.2671957671957671958e-7,
    2.0876756987868098979e-8,
    -5.2841901386874931848e-10,
    1.3382536530684678833e-11,
    -3.3896802963225828668e-13,
    8.5860620562778445641e-15,
    -2.1748686985580618730e-16,
)

SERIES_CUTOFF = 0.5
TAIL_CUTOFF = 30.0


class Regime(str, enum.Enum):
    SERIES = "series-near-zero"
    DIRECT = "direct"
    TAIL = "asymptotic-tail"


@dataclass(frozen=True)
class ReducedRational:
    """Positive rational m/n together with its reduction m = r p, n = r q."""

    m: int
    n: int
    r: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if min(self.m, self.n, self.r, self.p, self.q) < 1:
            raise DomainError(f"all fields must be >= 1, got {self}")
        if self.m != self.r * self.p or self.n != self.r * self.q:
            raise DomainError(f"inconsistent reduction witness {self}")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"p={self.p}, q={self.q} not coprime")

    @classmethod
    def of(cls, m: int, n: int) -> "ReducedRational":
        m, n = int(m), int(n)
        if m < 1 or n < 1:
            raise DomainError(f"m and n must be positive, got {m}/{n}")
        r = math.gcd(m, n)
        return cls(m, n, r, m // r, n // r)

    @property
    def value(self) -> float:
        return self.m / self.n

    @property
    def is_reduced(self) -> bool:
        return self.r == 1

    def __str__(self) -> str:
        return f"{self.m}/{self.n}"


@dataclass(frozen=True)
class KernelValue:
    value: float
    regime: Regime


def _e1_series(x):
    # E_1(x) = 1/2 - sum_k B_{2k} x^{2k-1} / (2k)!
    x2 = x * x
    acc = _BERNOULLI_RATIOS[-1]
    for c in reversed(_BERNOULLI_RATIOS[:-1]):
        acc = acc * x2 + c
    return 0.5 - x * acc


def _e1_direct(x):
    return 1.0 / x - 1.0 / np.expm1(x)


def _e1_tail(x):
    q = np.exp(-x)
    return 1.0 / x - q / (1.0 - q)


_BRANCHES = {Regime.SERIES: _e1_series, Regime.DIRECT: _e1_direct, Regime.TAIL: _e1_tail}


def _regime(x: float) -> Regime:
    if x < SERIES_CUTOFF:
        return Regime.SERIES
    if x > TAIL_CUTOFF:
        return Regime.TAIL
    return Regime.DIRECT


def _check_index(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"index n must be a positive integer, got {n!r}")
    return int(n)


def eval_kernel(n: int, t: float) -> KernelValue:
    """Evaluate E_n(t) and report which branch produced the value."""
    n = _check_index(n)
    t = float(t)
    if not (t > 0.0) or not math.isfinite(t):
        raise DomainError(f"t must be positive and finite, got {t}")
    x = n * t
    regime = _regime(x)
    value = _BRANCHES[regime](np.float64(x))
    return KernelValue(float(value), regime)


def kernel(n: int, t) -> np.ndarray:
    """Vectorised E_n(t) for an array of positive t; same branches as
    :func:`eval_kernel`."""
    x = n * np.asarray(t, dtype=float)
    out = np.empty_like(x)
    lo = x < SERIES_CUTOFF
    hi = x > TAIL_CUTOFF
    mid = ~(lo | hi)
    out[lo] = _e1_series(x[lo])
    out[mid] = _e1_direct(x[mid])
    out[hi] = _e1_tail(x[hi])
    return out


def half_minus_e1_over_t(t) -> np.ndarray:
    """(1/2 - E_1(t)) / t, i.e. 1/(t(e^t-1)) - 1/t^2 + 1/(2t), without the
    1/t blow-up of the direct form."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    lo = t < SERIES_CUTOFF
    x2 = t[lo] ** 2
    acc = np.full_like(x2, _BERNOULLI_RATIOS[-1])
    for c in reversed(_BERNOULLI_RATIOS[:-1]):
        acc = acc * x2 + c
    out[lo] = acc
    out[~lo] = (0.5 - kernel(1, t[~lo])) / t[~lo]
    return out


def frac_exp_mean(alpha: float) -> float:
    """E[{Z}] for Z exponential with rate ``alpha``: 1/alpha - 1/(e^alpha - 1)."""
    alpha = float(alpha)
    if not alpha > 0.0:
        raise DomainError(f"rate must be positive, got {alpha}")
    return eval_kernel(1, alpha).value


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    log_two_pi: float
    C_closed: float
    C_integral: "IntegralEstimate"

    @property
    def gap(self) -> float:
        return abs(self.C_closed - self.C_integral.value)


def constant_C(tol: float = 1e-13) -> Constants:
    """The constant C by its closed form (log 2pi - gamma)/2 and by quadrature of
    its two defining integrals."""
    from vasyunin.quadrature import IntegralEstimate, integrate_interval, integrate_to_infinity

    head = integrate_interval(half_minus_e1_over_t, 0.0, 1.0, tol / 2)
    tail = integrate_to_infinity(lambda t: np.exp(-t) / (-t * np.expm1(-t)), 1.0, tol / 2)
    integral = IntegralEstimate(
        value=1.0 - head.value - tail.value,
        abs_error=head.abs_error + tail.abs_error,
        evaluations=head.evaluations + tail.evaluations,
        converged=head.converged and tail.converged,
    )
    return Constants(EULER_GAMMA, LOG_TWO_PI, C_CLOSED, integral)


def chi_inner_rho(n: int) -> float:
    """<chi, rho_n> = int_0^1 {1/(n t)} dt = (1 - gamma + log n) / n."""
    n = _check_index(n)
    return (1.0 - EULER_GAMMA + math.log(n)) / n


def chi_inner_R(n: int) -> float:
    """<chi, R_n> = int_0^1 E_n(t) dt = log(n / (1 - e^{-n})) / n."""
    n = _check_index(n)
    return (math.log(n) - math.log(-math.expm1(-n))) / n
