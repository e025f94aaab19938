"""Gram systems and Nyman-Beurling distances.

Two spanning families in L^2:

* deterministic: rho_n(t) = {1/(n t)},
* probabilistic: R_n(w, t) = {X_n(w) / (n t)} with X_n ~ Exp(1) i.i.d.,

with target chi = 1_(0,1].  The squared distance of chi to the span of the
first N functions is 1 - b^T G^{-1} b, computed as 1 - |L^{-1} b|^2 with
G = L L^T.  Because the Cholesky factor of a leading block is the leading
block of the factor, the sequence of distances is non-increasing in exact
and in floating-point arithmetic alike.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import linalg

from vasyunin._eft import exact_quadratic_residual, exact_residual
from vasyunin.autocorrelation import det_inner_closed, exp_inner_closed
from vasyunin.errors import DomainError
from vasyunin.quadrature import oracle_det_inner, oracle_exp_inner
from vasyunin.special import chi_inner_R, chi_inner_rho

log = logging.getLogger(__name__)

N_SOFT_CAP = 64
MONOTONE_SLACK = 1e-9


class Model(str, enum.Enum):
    DETERMINISTIC = "deterministic"
    PROBABILISTIC = "probabilistic"

    @classmethod
    def parse(cls, name: "str | Model") -> "Model":
        if isinstance(name, Model):
            return name
        aliases = {"det": cls.DETERMINISTIC, "prob": cls.PROBABILISTIC}
        try:
            return aliases.get(name) or cls(name)
        except ValueError:
            raise DomainError(f"unknown model {name!r}") from None


class Method(str, enum.Enum):
    CHOLESKY = "cholesky"
    DEFLATED = "deflated-cholesky"
    EIGEN = "eigen-fallback"
    FAILED = "failed"


def gram_entry(model: "str | Model", m: int, n: int, source: str = "closed") -> float:
    """<f_m, f_n> for the family of ``model``.

    The deterministic closed form is only available for coprime pairs; for
    r = gcd(m, n) > 1 the substitution t -> t/r gives
    <rho_{rp}, rho_{rq}> = <rho_p, rho_q> / r.  ``source="oracle"`` bypasses the
    closed forms and integrates numerically.
    """
    model = Model.parse(model)
    if m < 1 or n < 1:
        raise DomainError(f"indices must be positive, got ({m}, {n})")
    if source == "oracle":
        if model is Model.PROBABILISTIC:
            return oracle_exp_inner(m, n).value
        return oracle_det_inner(m, n).value
    if source != "closed":
        raise DomainError(f"unknown source {source!r}")
    if model is Model.PROBABILISTIC:
        return exp_inner_closed(m, n).total / (m * n)
    r = math.gcd(m, n)
    p, q = m // r, n // r
    return det_inner_closed(p, q) / (r * p * q)


def chi_inner(model: "str | Model", n: int) -> float:
    model = Model.parse(model)
    return chi_inner_R(n) if model is Model.PROBABILISTIC else chi_inner_rho(n)


@dataclass
class GramSystem:
    model: Model
    N: int
    G: np.ndarray
    b: np.ndarray
    chi_norm_sq: float = 1.0
    condition_estimate: float = math.nan
    factorization_ok: bool = False

    def leading(self, k: int) -> "GramSystem":
        """The system spanned by the first ``k`` functions."""
        if not 1 <= k <= self.N:
            raise DomainError(f"k must lie in [1, {self.N}]")
        G = self.G[:k, :k].copy()
        return _finish(self.model, G, self.b[:k].copy())


def _finish(model: Model, G: np.ndarray, b: np.ndarray) -> GramSystem:
    try:
        linalg.cholesky(G, lower=True)
        ok = True
    except linalg.LinAlgError:
        ok = False
    cond = float(np.linalg.cond(G))
    return GramSystem(model, G.shape[0], G, b, 1.0, cond, ok)


def build_gram(model: "str | Model", N: int) -> GramSystem:
    model = Model.parse(model)
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    G = np.empty((N, N))
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            G[i - 1, j - 1] = G[j - 1, i - 1] = gram_entry(model, i, j)
    b = np.array([chi_inner(model, i) for i in range(1, N + 1)])
    return _finish(model, G, b)


@dataclass
class DistanceReport:
    N: int
    distance_sq: float
    method: Method
    residual_check: float
    condition: float = math.nan
    flags: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.method is not Method.FAILED


def _nested_cholesky(G: np.ndarray, drop_tol: float) -> tuple[list[int], np.ndarray]:
    """Left-looking Cholesky that skips columns whose Schur pivot falls below
    ``drop_tol * G[k, k]``; those functions are numerically in the span of
    the earlier ones.  The kept set for a leading block is a prefix of the
    kept set for the full matrix."""
    N = G.shape[0]
    L = np.zeros((N, N))
    kept: list[int] = []
    for k in range(N):
        j = len(kept)
        if j:
            row = linalg.solve_triangular(L[:j, :j], G[kept, k], lower=True)
        else:
            row = np.empty(0)
        pivot = G[k, k] - row @ row
        if not pivot > drop_tol * G[k, k]:
            continue
        L[j, :j] = row
        L[j, j] = math.sqrt(pivot)
        kept.append(k)
    return kept, L[: len(kept), : len(kept)]


def _refined_solve(L: np.ndarray, G: np.ndarray, b: np.ndarray, steps: int = 2) -> np.ndarray:
    c = linalg.cho_solve((L, True), b)
    for _ in range(steps):
        c = c + linalg.cho_solve((L, True), exact_residual(G, c, b))
    return c


def _eigen_distance(G: np.ndarray, b: np.ndarray) -> np.ndarray:
    w, V = np.linalg.eigh(G)
    cutoff = w.max() * np.finfo(float).eps * G.shape[0]
    keep = w > cutoff
    proj = V[:, keep].T @ b
    return V[:, keep] @ (proj / w[keep])


def default_drop_tol(N: int) -> float:
    return 16.0 * N * np.finfo(float).eps


def nb_distance(
    system: GramSystem, fallback: str = "deflate", drop_tol: float | None = None
) -> DistanceReport:
    """Squared distance from chi to the span of the system's functions.

    The coefficients c solve G c = b by Cholesky with two steps of iterative
    refinement on exactly rounded residuals; the distance is then evaluated as
    the quadratic form |chi|^2 - 2 b.c + c.G.c with error-free products, which
    is insensitive to first-order errors in c.

    If some Schur pivot is numerically zero, ``fallback="deflate"`` drops the
    dependent columns (method ``deflated-cholesky``) and ``fallback="eigen"``
    solves with eigenvalues below ``lambda_max * eps * N`` discarded.
    """
    G, b, N = system.G, system.b, system.N
    tol = default_drop_tol(N) if drop_tol is None else drop_tol
    flags: list[str] = []
    coef = np.zeros(N)
    try:
        kept, L = _nested_cholesky(G, tol)
        if len(kept) == N:
            method = Method.CHOLESKY
        elif fallback == "deflate":
            method = Method.DEFLATED
            flags.append(f"dropped {N - len(kept)} dependent columns")
            log.info("N=%d: %d columns numerically dependent", N, N - len(kept))
        elif fallback == "eigen":
            method = Method.EIGEN
        else:
            raise linalg.LinAlgError("Gram matrix not numerically positive definite")
        if method is Method.EIGEN:
            coef = _eigen_distance(G, b)
        elif kept:
            coef[kept] = _refined_solve(L, G[np.ix_(kept, kept)], b[kept])
        d2 = exact_quadratic_residual(G, coef, b, system.chi_norm_sq)
        if not 0.0 <= d2 <= system.chi_norm_sq:
            raise linalg.LinAlgError(f"distance^2 {d2!r} outside [0, |chi|^2]")
    except (linalg.LinAlgError, np.linalg.LinAlgError, ValueError) as exc:
        return DistanceReport(
            N, math.nan, Method.FAILED, math.nan, system.condition_estimate,
            [f"solver failure: {exc}"],
        )
    residual = float(np.linalg.norm(G @ coef - b))
    return DistanceReport(N, float(d2), method, residual, system.condition_estimate, flags)


def distance_sequence(model: "str | Model", N_max: int, force: bool = False) -> list[DistanceReport]:
    """Reports for N = 1..N_max from a single Gram system of size N_max."""
    if N_max < 1:
        raise DomainError(f"N_max must be >= 1, got {N_max}")
    if N_max > N_SOFT_CAP and not force:
        raise DomainError(
            f"N_max={N_max} exceeds the double-precision cap {N_SOFT_CAP}; pass force=True"
        )
    full = build_gram(model, N_max)
    reports: list[DistanceReport] = []
    for k in range(1, N_max + 1):
        rep = nb_distance(full.leading(k))
        if reports and rep.ok and reports[-1].ok:
            if rep.distance_sq > reports[-1].distance_sq + MONOTONE_SLACK:
                rep.flags.append("non-monotone")
                log.warning("N=%d: distance increased", k)
        reports.append(rep)
    return reports


def _exact_det(rows: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in rows]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


def determinant_quotient(system: GramSystem) -> float:
    """det Gram(chi, f_1..f_N) / det Gram(f_1..f_N), in exact rational
    arithmetic on the stored binary64 entries (use for small N only)."""
    N = system.N
    G = [[Fraction(float(x)) for x in row] for row in system.G]
    b = [Fraction(float(x)) for x in system.b]
    aug = [[Fraction(system.chi_norm_sq)] + b] + [[b[i]] + G[i] for i in range(N)]
    return float(_exact_det(aug) / _exact_det(G))
