"""Seeded Monte Carlo oracle for the randomised family R_n = {X_n / (n t)}.

Random numbers come in fixed-size blocks.  Block ``j`` of stream ``s`` under
seed ``seed`` is drawn from a Philox generator keyed by ``(seed, s, j)``, so
any block can be produced independently and results do not depend on how many
threads produced them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vasyunin._parallel import ordered_map
from vasyunin.errors import DomainError

BLOCK = 4096
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    samples: int
    seed: int
    dropped: int = 0

    def z_score(self, exact: float) -> float:
        return abs(self.mean - exact) / self.std_error if self.std_error > 0 else math.inf

    def agrees(self, exact: float, sigmas: float = 4.0) -> bool:
        return abs(self.mean - exact) <= sigmas * self.std_error


def _uniform_block(seed: int, stream: int, block: int) -> np.ndarray:
    ss = np.random.SeedSequence([seed & _SEED_MASK, stream, block])
    return np.random.Generator(np.random.Philox(ss)).random(BLOCK)


def sample_exponential(rate: float, count: int, seed: int, stream: int = 0) -> np.ndarray:
    """``count`` i.i.d. Exp(rate) draws by inversion, -log(1 - U) / rate."""
    if not rate > 0:
        raise DomainError(f"rate must be positive, got {rate}")
    if count < 0:
        raise DomainError("count must be non-negative")
    nblocks = -(-count // BLOCK)
    u = np.concatenate([_uniform_block(seed, stream, j) for j in range(nblocks)] or [np.empty(0)])
    return -np.log1p(-u[:count]) / rate


def _estimate(values: np.ndarray, seed: int, dropped: int = 0) -> McEstimate:
    n = values.size
    if n < 2:
        raise DomainError("need at least two usable samples")
    mean = math.fsum(values) / n
    var = math.fsum((values - mean) ** 2) / (n - 1)
    return McEstimate(mean, math.sqrt(var / n), n, seed, dropped)


def mc_frac_exp_mean(alpha: float, samples: int = 1_000_000, seed: int = 0) -> McEstimate:
    """Sample mean of {Z} for Z ~ Exp(alpha)."""
    if not alpha > 0:
        raise DomainError(f"rate must be positive, got {alpha}")
    if samples < 100:
        raise DomainError("need at least 100 samples")
    z = sample_exponential(alpha, samples, seed)
    return _estimate(z - np.floor(z), seed)


def frac_product_integral(a: float, b: float, cutoff: float) -> float:
    """int_0^inf {a/t} {b/t} dt for a, b > 0, exactly up to u = 1/t = cutoff.

    In u = 1/t the integrand is {a u}{b u} / u^2.  On each piece between
    consecutive points of (1/a)Z and (1/b)Z it equals
    ab - (a j + b i)/u + i j / u^2 and is integrated in closed form.  Below
    u = 1/max(a, b) both fractional parts are unreduced, giving ab/max(a, b).
    Beyond the cutoff the two fractional parts equidistribute and the
    tail is taken as 1/(4 cutoff).
    """
    ka = np.arange(1, math.floor(a * cutoff) + 1) / a
    kb = np.arange(1, math.floor(b * cutoff) + 1) / b
    edges = np.unique(np.concatenate([ka, kb, [cutoff]]))
    edges = edges[edges <= cutoff]
    u0 = edges[0]
    head = a * b * u0
    lo, hi = edges[:-1], edges[1:]
    mid = 0.5 * (lo + hi)
    i = np.floor(a * mid)
    j = np.floor(b * mid)
    du = hi - lo
    pieces = a * b * du - (a * j + b * i) * np.log1p(du / lo) + i * j * du / (lo * hi)
    return math.fsum(pieces) + head + 0.25 / cutoff


def mc_exp_inner(
    m: int, n: int, samples: int = 10_000, seed: int = 0, t_tol: float = 1e-3
) -> McEstimate:
    """Monte Carlo estimate of <R_n, R_m> = E int {X_n/(n t)}{X_m/(m t)} dt.

    ``t_tol`` sets the cutoff 1/t_tol in u = 1/t beyond which the per-sample
    integrand is replaced by its equidistributed mean.
    """
    if m < 1 or n < 1:
        raise DomainError(f"indices must be positive, got ({m}, {n})")
    if samples < 2:
        raise DomainError("need at least two samples")
    cutoff = 1.0 / t_tol
    nblocks = -(-samples // BLOCK)

    def block_values(j: int) -> np.ndarray:
        xn = -np.log1p(-_uniform_block(seed, 0, j))
        xm = -np.log1p(-_uniform_block(seed, 1, j))
        count = min(BLOCK, samples - j * BLOCK)
        return np.array(
            [frac_product_integral(xn[s] / n, xm[s] / m, cutoff) for s in range(count)]
        )

    values = np.concatenate(ordered_map(block_values, range(nblocks)))
    good = np.isfinite(values)
    return _estimate(values[good], seed, dropped=int(values.size - good.sum()))
