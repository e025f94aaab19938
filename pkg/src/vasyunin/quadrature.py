"""Adaptive Gauss-Kronrod quadrature used as the independent oracle.

Panels are evaluated in vectorised batches: the integrand receives a flat
``ndarray`` of abscissae and must return an array of the same shape.  Each
panel carries the 15-point Kronrod value and the raw Kronrod/Gauss difference
as its error.  A panel is accepted once its error is below its width-share of
the requested tolerance, so accepted errors always sum to at most ``tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from vasyunin.errors import DomainError
from vasyunin.special import kernel

Integrand = Callable[[np.ndarray], np.ndarray]

# QUADPACK qk15 abscissae (positive half) and weights
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[13, 11, 9]] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]

_EPS = np.finfo(float).eps
_CHUNK = 1 << 15
DEFAULT_MAX_PANELS = 2_000_000


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    abs_error: float
    evaluations: int
    converged: bool

    def __add__(self, other: "IntegralEstimate") -> "IntegralEstimate":
        return IntegralEstimate(
            self.value + other.value,
            self.abs_error + other.abs_error,
            self.evaluations + other.evaluations,
            self.converged and other.converged,
        )

    def scaled(self, factor: float) -> "IntegralEstimate":
        return IntegralEstimate(
            self.value * factor, self.abs_error * abs(factor), self.evaluations, self.converged
        )


@dataclass(frozen=True)
class BreakpointPlan:
    """Partition of ``[lower, cutoff]`` for a piecewise-smooth integrand.

    ``tail_bound`` bounds the absolute value of the integral beyond ``cutoff``;
    it is folded into the reported error, never into the value.
    """

    breakpoints: np.ndarray
    cutoff: float
    tail_bound: float = 0.0
    lower: float = 0.0

    def __post_init__(self) -> None:
        bp = np.asarray(self.breakpoints, dtype=float)
        object.__setattr__(self, "breakpoints", bp)
        if not self.cutoff > self.lower:
            raise DomainError("cutoff must exceed the lower limit")
        if self.tail_bound < 0:
            raise DomainError("tail_bound must be non-negative")
        if bp.size:
            if bp[0] <= self.lower or bp[-1] >= self.cutoff:
                raise DomainError("breakpoints must lie strictly inside (lower, cutoff)")
            if np.any(np.diff(bp) <= 0):
                raise DomainError("breakpoints must be strictly increasing")

    @property
    def edges(self) -> np.ndarray:
        return np.concatenate([[self.lower], self.breakpoints, [self.cutoff]])


def _panels(
    f: Integrand, a: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Kronrod value, error estimate and a roundoff-floor flag per panel."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    vals = np.empty_like(a)
    errs = np.empty_like(a)
    floor_hit = np.empty(a.shape, dtype=bool)
    for s in range(0, a.size, _CHUNK):
        sl = slice(s, s + _CHUNK)
        x = mid[sl, None] + half[sl, None] * NODES[None, :]
        fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
        k = fx @ KRONROD_WEIGHTS
        g = fx @ GAUSS_WEIGHTS
        # K-G cannot be resolved below a few ulps of the integral of |f|
        floor = 50 * _EPS * (np.abs(fx) @ KRONROD_WEIGHTS)
        vals[sl] = half[sl] * k
        errs[sl] = np.abs(half[sl]) * np.maximum(np.abs(k - g), floor)
        floor_hit[sl] = np.abs(k - g) <= floor
    return vals, errs, floor_hit


def _adaptive(
    f: Integrand,
    edges: np.ndarray,
    tol: float,
    max_panels: int = DEFAULT_MAX_PANELS,
) -> IntegralEstimate:
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1].copy(), edges[1:].copy()
    width = float(edges[-1] - edges[0])
    accepted_vals: list[np.ndarray] = []
    accepted_errs: list[np.ndarray] = []
    evaluations = 0
    # the budget counts panels created by bisection, not the initial partition
    panels_used = 0
    converged = True
    while a.size:
        vals, errs, floor_hit = _panels(f, a, b)
        evaluations += 15 * a.size
        ok = errs <= tol * (b - a) / width
        # bisection cannot improve panels at the roundoff floor or at ulp width
        stuck = ~ok & (floor_hit | ((b - a) <= 4 * _EPS * np.maximum(np.abs(a), np.abs(b))))
        if stuck.any():
            converged = False
            ok |= stuck
        if panels_used + np.count_nonzero(~ok) > max_panels:
            converged = False
            ok[:] = True
        accepted_vals.append(vals[ok])
        accepted_errs.append(errs[ok])
        a, b = a[~ok], b[~ok]
        if a.size:
            m = 0.5 * (a + b)
            a, b = np.concatenate([a, m]), np.concatenate([m, b])
            panels_used += a.size // 2
    value = math.fsum(np.concatenate(accepted_vals))
    abs_error = math.fsum(np.concatenate(accepted_errs))
    if abs_error > tol:
        converged = False
    return IntegralEstimate(value, abs_error, evaluations, converged)


def integrate_interval(f: Integrand, a: float, b: float, tol: float, **kw) -> IntegralEstimate:
    """Adaptive integral of ``f`` over the finite interval ``[a, b]``."""
    if not b > a:
        raise DomainError("need a < b")
    return _adaptive(f, np.array([a, b], dtype=float), tol, **kw)


def integrate_to_infinity(f: Integrand, a: float, tol: float, **kw) -> IntegralEstimate:
    """Integral of ``f`` over ``[a, inf)``, with a > 0, after t = a/u."""
    if not a > 0:
        raise DomainError("lower limit must be positive")

    def mapped(u):
        return a * f(a / u) / (u * u)

    return _adaptive(mapped, np.array([0.0, 1.0]), tol, **kw)


def integrate_smooth_semiinf(f: Integrand, tol: float = 1e-10, **kw) -> IntegralEstimate:
    """Integral of a smooth ``f`` over ``(0, inf)``.

    Split at t = 1; the infinite half is mapped by t -> 1/u onto (0, 1].  The
    integrand must have a finite limit at 0+ and decay at least like t^-2.
    """
    return integrate_interval(f, 0.0, 1.0, tol / 2, **kw) + integrate_to_infinity(
        f, 1.0, tol / 2, **kw
    )


def integrate_piecewise(f: Integrand, plan: BreakpointPlan, tol: float, **kw) -> IntegralEstimate:
    """Sum of adaptive integrals over the plan's sub-intervals plus the tail bound."""
    budget = tol - plan.tail_bound
    if budget <= 0:
        est = _adaptive(f, plan.edges, tol, **kw)
        return IntegralEstimate(est.value, est.abs_error + plan.tail_bound, est.evaluations, False)
    est = _adaptive(f, plan.edges, budget, **kw)
    return IntegralEstimate(
        est.value,
        est.abs_error + plan.tail_bound,
        est.evaluations,
        est.converged and est.abs_error + plan.tail_bound <= tol,
    )


def _check_pair(m: int, n: int) -> tuple[int, int]:
    if int(m) != m or int(n) != n or m < 1 or n < 1:
        raise DomainError(f"indices must be positive integers, got ({m}, {n})")
    return int(m), int(n)


def oracle_exp_inner(m: int, n: int, tol: float = 1e-12) -> IntegralEstimate:
    """Quadrature of int_0^inf E_m(t) E_n(t) dt.  No coprimality needed."""
    m, n = _check_pair(m, n)
    lo, hi = min(m, n), max(m, n)  # fixed order keeps the oracle exactly symmetric
    return integrate_smooth_semiinf(lambda t: kernel(lo, t) * kernel(hi, t), tol)


def fractional_plan(periods: Sequence[int], tol: float) -> BreakpointPlan:
    """Breakpoints at all multiples of ``periods`` in (0, U) with 1/U <= tol/2."""
    cutoff = math.ceil(2.0 / tol)
    pts = np.unique(np.concatenate([np.arange(p, cutoff, p, dtype=float) for p in periods]))
    return BreakpointPlan(pts, float(cutoff), tail_bound=1.0 / cutoff)


def oracle_det_inner(m: int, n: int, tol: float = 1e-5) -> IntegralEstimate:
    """Quadrature of int_0^inf {1/(n t)}{1/(m t)} dt.

    After t = 1/u the integrand is {u/n}{u/m} / u^2, smooth between multiples
    of m and n.  Beyond the cutoff U it is bounded by 1/u^2, whose integral 1/U
    is the tail bound.
    """
    m, n = _check_pair(m, n)
    lo, hi = min(m, n), max(m, n)
    plan = fractional_plan((lo, hi), tol)

    def integrand(u):
        # u >= 0 so np.floor gives the fractional part; u < 1 region is smooth
        fl = u / lo - np.floor(u / lo)
        fh = u / hi - np.floor(u / hi)
        out = np.empty_like(u)
        small = u < 1e-150
        out[small] = 1.0 / (lo * hi)
        big = ~small
        out[big] = fl[big] * fh[big] / (u[big] * u[big])
        return out

    return integrate_piecewise(integrand, plan, tol)
