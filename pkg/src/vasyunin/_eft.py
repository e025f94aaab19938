"""Error-free transformations for exactly rounded dot products."""

from __future__ import annotations

import math

import numpy as np

_SPLITTER = 134217729.0  # 2^27 + 1


def _split(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Dekker's product: a*b == p + e exactly (barring over/underflow)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def exact_dot(a, b) -> float:
    """Correctly rounded sum(a * b)."""
    p, e = two_prod(a, b)
    return math.fsum(np.concatenate([p.ravel(), e.ravel()]))


def exact_residual(G: np.ndarray, c: np.ndarray, b: np.ndarray) -> np.ndarray:
    """b - G c with every component correctly rounded."""
    p, e = two_prod(G, c[None, :])
    return np.array([math.fsum([b[i], *(-p[i]), *(-e[i])]) for i in range(b.size)])


def exact_quadratic_residual(G: np.ndarray, c: np.ndarray, b: np.ndarray, norm_sq: float) -> float:
    """norm_sq - 2 b.c + c.G.c, correctly rounded."""
    p1, e1 = two_prod(G, c[None, :])
    terms = []
    for part in (p1, e1):
        hi, lo = two_prod(c[:, None], part)
        terms.append(hi.ravel())
        terms.append(lo.ravel())
    bc_p, bc_e = two_prod(b, c)
    terms.append(-2.0 * bc_p)
    terms.append(-2.0 * bc_e)
    terms.append(np.array([norm_sq]))
    return math.fsum(np.concatenate(terms))
