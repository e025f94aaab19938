"""Cotangent sums with exact index arithmetic.

Every cotangent is taken at pi*j/n with the residue j = k mod n computed on
integers, so trig is only ever evaluated on (0, pi/2] and poles are detected
exactly.  Sums go through :func:`math.fsum`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from vasyunin.errors import DomainError, PoleError, PreconditionError

PI = math.pi


def _cot_residue(j: int, n: int) -> float:
    # 0 < j < n; fold onto (0, n/2] using cot(pi - x) = -cot(x)
    if 2 * j == n:
        return 0.0
    if 2 * j > n:
        return -_cot_residue(n - j, n)
    x = PI * j / n
    return math.cos(x) / math.sin(x)


def cot_at_reduced(k: int, n: int) -> float:
    """cot(pi k / n) after exact reduction of k modulo n."""
    if n < 1:
        raise DomainError(f"modulus must be positive, got {n}")
    j = k % n
    if j == 0:
        raise PoleError(f"cot(pi*{k}/{n}) is a pole")
    return _cot_residue(j, n)


def _require_coprime(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise PreconditionError(f"need positive integers, got ({m}, {n})")
    if math.gcd(m, n) != 1:
        raise PreconditionError(f"({m}, {n}) are not coprime")


def plain_cot_sum(m: int, n: int) -> float:
    """sum_{k=1}^{n-1} cot(m k pi / n); zero for coprime m, n."""
    _require_coprime(m, n)
    return math.fsum(cot_at_reduced(m * k, n) for k in range(1, n))


def weighted_cot_sum(m: int, n: int) -> float:
    """sum_{k=1}^{n-1} (m k / n) cot(m k pi / n) for coprime m, n."""
    _require_coprime(m, n)
    return math.fsum((m * k / n) * cot_at_reduced(m * k, n) for k in range(1, n))


@dataclass(frozen=True)
class CotangentSumReport:
    """Combined cotangent part of the exponentially-averaged formula.

    ``value`` is ``regular_value + convention_value``; the latter is the
    -1/2 assigned to each singular pair (k, l) = (a q, a p).
    """

    value: float
    singular_pairs: list[tuple[int, int]] = field(default_factory=list)
    terms: int = 0
    regular_value: float = 0.0
    convention_value: float = 0.0


def _regular_terms(m: int, n: int) -> tuple[list[float], list[int]]:
    terms, singular = [], []
    for k in range(1, n):
        if (m * k) % n == 0:
            singular.append(k)
        else:
            terms.append(-0.5 * PI * (m * k / n) * cot_at_reduced(m * k, n))
    return terms, singular


def weighted_cot_sum_general(m: int, n: int) -> CotangentSumReport:
    """-(pi/2) sum_k (mk/n) cot(mk pi/n) - (pi/2) sum_l (nl/m) cot(nl pi/m) for any m, n >= 1.

    When r = gcd(m, n) > 1, the indices k = a q and l = a p (1 <= a < r) hit
    poles.  They are paired, and each pair's combined value
    cot(x) x + cot(y) y is set to 1, so each pair contributes -1/2.
    """
    if m < 1 or n < 1:
        raise DomainError(f"need positive integers, got ({m}, {n})")
    r = math.gcd(m, n)
    p, q = m // r, n // r
    k_terms, k_sing = _regular_terms(m, n)
    l_terms, l_sing = _regular_terms(n, m)
    pairs = [(a * q, a * p) for a in range(1, r)]
    if k_sing != [k for k, _ in pairs] or l_sing != [l for _, l in pairs]:
        raise AssertionError(f"singular index mismatch for ({m}, {n})")
    regular = math.fsum(k_terms + l_terms)
    convention = -0.5 * (r - 1)
    return CotangentSumReport(
        value=math.fsum(k_terms + l_terms + [-0.5] * (r - 1)),
        singular_pairs=pairs,
        terms=len(k_terms) + len(l_terms) + len(pairs),
        regular_value=regular,
        convention_value=convention,
    )


def bettin_c(h: int, k: int) -> float:
    """Cotangent sum c(h/k) = -sum_{a=1}^{k-1} (a/k) cot(pi a h / k)."""
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if math.gcd(h, k) != 1:
        raise PreconditionError(f"({h}, {k}) are not coprime")
    return -math.fsum((a / k) * cot_at_reduced(a * h, k) for a in range(1, k))


def _dist_to_lattice(x: float, step: float) -> float:
    y = x / step
    return abs(y - round(y))


def inv_cos_gap_sum(n: int, a: float, guard: float = 1e-12) -> float:
    """(1/n) sum_{k=1}^{n-1} 1 / (cos a - cos(2 k pi / n))."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if _dist_to_lattice(a, 2 * PI / n) <= guard:
        raise DomainError(f"a={a} lies on the lattice (2pi/{n})Z")
    ca = math.cos(a)
    return math.fsum(1.0 / (ca - math.cos(2 * PI * k / n)) for k in range(1, n)) / n


def inv_cos_gap_closed(n: int, a: float, guard: float = 1e-12) -> float:
    """Closed form (1/sin a) ((1/n) cot(a/2) - cot(n a / 2))."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if _dist_to_lattice(a, 2 * PI / n) <= guard or _dist_to_lattice(a, PI) <= guard:
        raise DomainError(f"a={a} excluded for n={n}")
    return (1.0 / math.tan(a / 2) / n - 1.0 / math.tan(n * a / 2)) / math.sin(a)


def arctan_integral_closed(a: float, guard: float = 1e-12) -> float:
    """(pi/2 - a/2) / sin a, the value of int_1^inf dz / (z^2 - 2 cos(a) z + 1)."""
    if not (0.0 < a < 2 * PI) or abs(a - PI) <= guard * PI:
        raise DomainError(f"a={a} must lie in (0, 2pi) minus {{pi}}")
    return (0.5 * PI - 0.5 * a) / math.sin(a)
