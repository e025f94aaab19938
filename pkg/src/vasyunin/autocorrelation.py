"""Closed forms for the exponentially-averaged and classical Vasyunin formulas.

Notation: E_n(t) = 1/(nt) - 1/(e^{nt}-1), C = (log 2pi - gamma)/2 and
A(lambda) = int_0^inf E_1(t) E_lambda(t) dt, so that for lambda = m/n

    m A(m/n) = n A(n/m) = mn int_0^inf E_m E_n dt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from vasyunin.cotangent import (
    PI,
    _require_coprime,
    bettin_c,
    cot_at_reduced,
    weighted_cot_sum_general,
)
from vasyunin.errors import DomainError, IntegrityError, PreconditionError
from vasyunin.special import C_CLOSED, ReducedRational

REDUCTION_RTOL = 1e-12


@dataclass(frozen=True)
class ClosedFormBreakdown:
    """Addends of mn int E_m E_n dt; ``total`` is their compensated sum."""

    m: int
    n: int
    total: float
    constant_term: float
    log_term: float
    cot_terms: float
    convention_terms: float
    reduced_total: float | None = None


def _log_term(m: int, n: int) -> float:
    return 0.5 * (m - n) * (math.log(n) - math.log(m))


def _direct(m: int, n: int) -> ClosedFormBreakdown:
    cot = weighted_cot_sum_general(m, n)
    constant = C_CLOSED * (n + m) - 0.5
    log_term = _log_term(m, n)
    total = math.fsum([-0.5, C_CLOSED * (n + m), log_term, cot.regular_value, cot.convention_value])
    return ClosedFormBreakdown(
        m=m,
        n=n,
        total=total,
        constant_term=constant,
        log_term=log_term,
        cot_terms=cot.regular_value,
        convention_terms=cot.convention_value,
    )


@lru_cache(maxsize=65536)
def exp_inner_closed(m: int, n: int) -> ClosedFormBreakdown:
    """mn int_0^inf E_m(t) E_n(t) dt in closed form, for any m, n >= 1.

    Non-coprime pairs are evaluated twice: with the paired singular-index
    convention, and as r times the value at the reduced pair.  The two must
    agree to ``REDUCTION_RTOL``.
    """
    if isinstance(m, bool) or isinstance(n, bool) or int(m) != m or int(n) != n or m < 1 or n < 1:
        raise DomainError(f"need positive integers, got ({m}, {n})")
    m, n = int(m), int(n)
    out = _direct(m, n)
    r = math.gcd(m, n)
    if r == 1:
        return out
    reduced = r * _direct(m // r, n // r).total
    if abs(out.total - reduced) > REDUCTION_RTOL * abs(reduced):
        raise IntegrityError(
            f"({m}, {n}): convention path {out.total!r} != reduced path {reduced!r}"
        )
    return ClosedFormBreakdown(
        m, n, out.total, out.constant_term, out.log_term, out.cot_terms,
        out.convention_terms, reduced_total=reduced,
    )


def exp_autocorr(lam: ReducedRational) -> float:
    """A(m/n) = exp_inner_closed(m, n).total / m."""
    if not isinstance(lam, ReducedRational):
        lam = ReducedRational.of(*lam)
    return exp_inner_closed(lam.m, lam.n).total / lam.m


def det_inner_closed(m: int, n: int) -> float:
    """Classical Vasyunin formula: mn int_0^inf {1/(nt)} {1/(mt)} dt, coprime m, n."""
    _require_coprime(m, n)
    terms = [C_CLOSED * (n + m), _log_term(m, n)]
    # fractional parts from integer residues
    terms += [-0.5 * PI * ((m * k) % n / n) * cot_at_reduced(k, n) for k in range(1, n)]
    terms += [-0.5 * PI * ((n * l) % m / m) * cot_at_reduced(l, m) for l in range(1, m)]
    return math.fsum(terms)


def I_closed(m: int, n: int) -> float:
    """I(m, n) = int (E_m - E_1/m)(E_n - E_1/n) for coprime m, n >= 2."""
    if m < 2 or n < 2:
        raise PreconditionError(f"need m, n >= 2, got ({m}, {n})")
    _require_coprime(m, n)
    terms = [
        (m - 1) / (2 * m) * math.log(n) / n,
        (n - 1) / (2 * n) * math.log(m) / m,
    ]
    terms += [
        (cot_at_reduced(m * k, n) - cot_at_reduced(k, n) / m) * (0.5 * PI - k * PI / n) / (2 * n)
        for k in range(1, n)
    ]
    terms += [
        (cot_at_reduced(n * l, m) - cot_at_reduced(l, m) / n) * (0.5 * PI - l * PI / m) / (2 * m)
        for l in range(1, m)
    ]
    return math.fsum(terms)


def J_closed(n: int) -> float:
    """J(n) = int_0^inf E_1(t) E_n(t) dt."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    terms = [C_CLOSED * (1 + 1 / n), -1 / (2 * n), -(n - 1) / (2 * n) * math.log(n)]
    terms += [cot_at_reduced(k, n) * (0.5 * PI - k * PI / n) / (2 * n) for k in range(1, n)]
    return math.fsum(terms)


def assembly(m: int, n: int) -> float:
    """mn I(m,n) + m J(m) + n J(n) - J(1), which equals mn int E_m E_n."""
    return math.fsum([m * n * I_closed(m, n), m * J_closed(m), n * J_closed(n), -J_closed(1)])


class Reciprocity(NamedTuple):
    lhs: float
    rhs: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


def reciprocity_g(h: int, k: int) -> Reciprocity:
    """Both sides of x c(x) + c(1/x) - 1/(pi k) = (2x A(x) - 2(1+x) C + (x-1) log x) / pi, x = h/k."""
    if h < 1 or k < 1:
        raise PreconditionError(f"need positive h, k, got ({h}, {k})")
    _require_coprime(h, k)
    x = h / k
    lhs = math.fsum([x * bettin_c(h, k), bettin_c(k, h), -1.0 / (PI * k)])
    # 2 x A(x) = 2 total / k
    total = exp_inner_closed(h, k).total
    rhs = math.fsum([2.0 * total / k, -2.0 * (1.0 + x) * C_CLOSED, (x - 1.0) * math.log(x)]) / PI
    return Reciprocity(lhs, rhs)
