import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vasyunin.errors import DomainError
from vasyunin.quadrature import (
    GAUSS_WEIGHTS,
    KRONROD_WEIGHTS,
    NODES,
    BreakpointPlan,
    integrate_interval,
    integrate_piecewise,
    integrate_smooth_semiinf,
    oracle_det_inner,
    oracle_exp_inner,
)

C = 0.63033070075390631148


def test_gauss_part_matches_legendre():
    x, w = np.polynomial.legendre.leggauss(7)
    gauss_nodes = NODES[GAUSS_WEIGHTS > 0]
    assert np.allclose(np.sort(gauss_nodes), x, atol=1e-15)
    assert np.allclose(GAUSS_WEIGHTS[GAUSS_WEIGHTS > 0], w[np.argsort(x)][np.argsort(np.argsort(gauss_nodes))], atol=1e-15)


@pytest.mark.parametrize("degree", range(0, 23))
def test_kronrod_exact_to_degree_22(degree):
    exact = (1 - (-1) ** (degree + 1)) / (degree + 1)
    assert KRONROD_WEIGHTS @ NODES**degree == pytest.approx(exact, abs=1e-14)


class TestSmooth:
    def test_exponential(self):
        est = integrate_smooth_semiinf(lambda t: np.exp(-t), 1e-12)
        assert est.converged and est.abs_error <= 1e-12
        assert est.value == pytest.approx(1.0, abs=1e-12)

    def test_arctan(self):
        est = integrate_smooth_semiinf(lambda t: 1 / (1 + t * t), 1e-12)
        assert est.value == pytest.approx(math.pi / 2, abs=1e-12)

    def test_squared_kernel(self):
        est = oracle_exp_inner(1, 1, 1e-10)
        assert est.value == pytest.approx(2 * C - 0.5, abs=1e-10)

    def test_budget_exhaustion(self):
        est = integrate_interval(lambda x: np.sign(x - 1 / 3), 0.0, 1.0, 1e-14, max_panels=20)
        assert not est.converged
        assert est.evaluations > 0

    def test_bad_tolerance(self):
        with pytest.raises(DomainError):
            integrate_interval(np.exp, 0.0, 1.0, 0.0)

    @pytest.mark.parametrize("f", [
        lambda t: np.exp(-t) * np.cos(t),
        lambda t: 1 / (1 + t) ** 2,
        lambda t: 1 / (1 + t**4),
    ])
    def test_tolerance_refinement(self, f):
        prev = None
        for tol in (1e-6, 1e-7, 1e-8, 1e-9, 1e-10):
            est = integrate_smooth_semiinf(f, tol)
            assert est.converged and est.abs_error <= tol
            if prev is not None:
                assert est.abs_error <= prev.abs_error
                assert abs(est.value - prev.value) <= 2 * prev_tol
            prev, prev_tol = est, tol


class TestPiecewise:
    def test_constant_single_interval(self):
        plan = BreakpointPlan(np.array([]), 1.0)
        assert integrate_piecewise(lambda x: np.ones_like(x), plan, 1e-12).value == pytest.approx(1.0)

    def test_frac_one_over_t(self):
        U = 200_000
        plan = BreakpointPlan(np.arange(2.0, U), float(U), tail_bound=1.0 / U, lower=1.0)
        est = integrate_piecewise(lambda u: (u - np.floor(u)) / (u * u), plan, 1e-5)
        assert est.converged
        assert est.value == pytest.approx(1 - 0.57721566490153286061, abs=est.abs_error)

    def test_tail_exceeding_tol_is_not_converged(self):
        plan = BreakpointPlan(np.array([]), 1.0, tail_bound=1.0)
        assert not integrate_piecewise(lambda x: x, plan, 0.5).converged

    @pytest.mark.parametrize("bad", [
        dict(breakpoints=[2.0, 1.0], cutoff=3.0),
        dict(breakpoints=[0.5, 4.0], cutoff=3.0),
        dict(breakpoints=[], cutoff=1.0, tail_bound=-1.0),
    ])
    def test_plan_validation(self, bad):
        with pytest.raises(DomainError):
            BreakpointPlan(**bad)


class TestOracles:
    def test_exp_inner_12(self):
        est = oracle_exp_inner(1, 2, 1e-10)
        assert est.value == pytest.approx((3 * C - 0.5 - math.log(2) / 2) / 2, abs=1e-10)
        assert est.value == pytest.approx(0.52220925599087313986, abs=1e-12)

    def test_exp_inner_gcd_scaling(self):
        # mn int E_m E_n = r pq int E_p E_q  with (m, n) = (2, 4), r = 2
        assert 8 * oracle_exp_inner(2, 4).value == pytest.approx(2 * 2 * oracle_exp_inner(1, 2).value, rel=1e-12)

    @given(st.integers(1, 30), st.integers(1, 30))
    @settings(max_examples=40, deadline=None)
    def test_exp_inner_symmetric(self, m, n):
        assert oracle_exp_inner(m, n).value == oracle_exp_inner(n, m).value

    def test_det_inner_11(self):
        est = oracle_det_inner(1, 1, 1e-5)
        assert est.converged
        assert est.value == pytest.approx(2 * C, abs=1e-5)

    def test_det_inner_12(self):
        est = oracle_det_inner(1, 2, 1e-6)
        assert est.converged
        assert est.value == pytest.approx((3 * C - math.log(2) / 2) / 2, abs=1e-6)

    def test_det_inner_symmetric(self):
        a, b = oracle_det_inner(2, 3), oracle_det_inner(3, 2)
        assert abs(a.value - b.value) <= a.abs_error + b.abs_error

    def test_oracle_domain(self):
        with pytest.raises(DomainError):
            oracle_exp_inner(0, 1)
