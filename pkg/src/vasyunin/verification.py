"""Record-producing checks shared by the command line and the test-suite."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from vasyunin._parallel import ordered_map
from vasyunin.autocorrelation import exp_autocorr, exp_inner_closed, reciprocity_g
from vasyunin.quadrature import oracle_exp_inner
from vasyunin.special import ReducedRational, constant_C


@dataclass
class VerificationRecord:
    label: str
    closed: float
    oracle: float
    abs_gap: float
    rel_gap: float
    tolerance: float
    passed: bool
    converged: bool = True
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def compare(
        cls, label: str, closed: float, oracle: float, tolerance: float,
        converged: bool = True, **extra: Any,
    ) -> "VerificationRecord":
        gap = abs(closed - oracle)
        rel = gap / abs(oracle) if oracle else math.inf if gap else 0.0
        return cls(label, closed, oracle, gap, rel, tolerance, gap <= tolerance and converged,
                   converged, dict(extra))

    def as_row(self) -> dict[str, Any]:
        row = asdict(self)
        row.update(row.pop("extra"))
        return row


def check_constant(tolerance: float = 1e-10, quad_tol: float = 1e-13) -> VerificationRecord:
    # the oracle must be certified well inside the tolerance it is judged by
    c = constant_C(min(quad_tol, tolerance / 10))
    return VerificationRecord.compare(
        "C", c.C_closed, c.C_integral.value, tolerance, c.C_integral.converged,
        quad_error=c.C_integral.abs_error,
    )


def check_closed_form_pair(
    m: int, n: int, rtol: float = 1e-8, atol: float = 1e-10, quad_tol: float = 1e-12,
    sym_rtol: float = 1e-13, red_rtol: float = 1e-12,
) -> VerificationRecord:
    """Closed form / (mn) against quadrature, plus swap and gcd-reduction gaps."""
    br = exp_inner_closed(m, n)
    est = oracle_exp_inner(m, n, quad_tol)
    closed = br.total / (m * n)
    tol = max(rtol * abs(est.value), atol)
    swap = exp_inner_closed(n, m).total
    sym_gap = abs(swap - br.total) / abs(br.total)
    red_gap = 0.0 if br.reduced_total is None else abs(br.total - br.reduced_total) / abs(br.total)
    rec = VerificationRecord.compare(
        f"({m},{n})", closed, est.value, tol, est.converged,
        m=m, n=n, gcd=math.gcd(m, n), symmetry_gap=sym_gap, reduction_gap=red_gap,
    )
    rec.passed = rec.passed and sym_gap <= sym_rtol and red_gap <= red_rtol
    return rec


def check_closed_form_grid(max_index: int, **kw: Any) -> list[VerificationRecord]:
    pairs = [(m, n) for m in range(1, max_index + 1) for n in range(1, max_index + 1)]
    return ordered_map(lambda mn: check_closed_form_pair(*mn, **kw), pairs)


def check_reciprocity(k_max: int, tolerance: float = 1e-11) -> list[VerificationRecord]:
    out = []
    for k in range(1, k_max + 1):
        for h in range(1, k + 1):
            if math.gcd(h, k) != 1:
                continue
            res = reciprocity_g(h, k)
            out.append(VerificationRecord.compare(f"{h}/{k}", res.lhs, res.rhs, tolerance, h=h, k=k))
    return out


@dataclass(frozen=True)
class CurvePoint:
    p: int
    q: int
    lam: float
    value: float


def curve_points(den_max: int = 60, lambda_min: float = 0.0, lambda_max: float = 10.0) -> list[CurvePoint]:
    """A(1/lambda) on all reduced lambda = p/q, q <= den_max, lambda_min < lambda <= lambda_max."""
    lo, hi = Fraction(lambda_min), Fraction(lambda_max)
    grid = []
    for q in range(1, den_max + 1):
        p_lo = math.floor(lo * q) + 1
        p_hi = math.floor(hi * q)
        for p in range(max(p_lo, 1), p_hi + 1):
            if math.gcd(p, q) == 1:
                grid.append(Fraction(p, q))
    grid.sort()
    return [
        CurvePoint(f.numerator, f.denominator, f.numerator / f.denominator,
                   exp_autocorr(ReducedRational.of(f.denominator, f.numerator)))
        for f in grid
    ]
