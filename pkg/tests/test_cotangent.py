import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vasyunin.cotangent import (
    arctan_integral_closed,
    bettin_c,
    cot_at_reduced,
    inv_cos_gap_closed,
    inv_cos_gap_sum,
    plain_cot_sum,
    weighted_cot_sum,
    weighted_cot_sum_general,
)
from vasyunin.errors import DomainError, PoleError, PreconditionError
from vasyunin.quadrature import integrate_to_infinity

SQRT3 = math.sqrt(3.0)


class TestCotAtReduced:
    def test_values(self):
        assert cot_at_reduced(1, 2) == 0.0
        assert cot_at_reduced(1, 3) == pytest.approx(1 / SQRT3, rel=1e-15)
        assert cot_at_reduced(5, 3) == pytest.approx(-1 / SQRT3, rel=1e-15)
        assert cot_at_reduced(-1, 3) == pytest.approx(-1 / SQRT3, rel=1e-15)

    def test_huge_index_is_reduced_exactly(self):
        k = 10**18 * 7 + 2
        assert cot_at_reduced(k, 7) == cot_at_reduced(2, 7)

    def test_pole(self):
        with pytest.raises(PoleError):
            cot_at_reduced(6, 3)

    def test_antisymmetry_is_exact(self):
        for n in range(2, 60):
            for j in range(1, n):
                assert cot_at_reduced(j, n) == -cot_at_reduced(n - j, n)


class TestCotanZero:
    def test_examples(self):
        assert abs(plain_cot_sum(1, 5)) <= 1e-12
        assert abs(plain_cot_sum(3, 7)) <= 1e-12
        assert plain_cot_sum(1, 2) == 0.0

    def test_requires_coprime(self):
        with pytest.raises(PreconditionError):
            plain_cot_sum(2, 4)

    def test_permutation_identity(self):
        for n in range(2, 120):
            for m in range(1, n):
                if math.gcd(m, n) == 1:
                    assert sorted(m * k % n for k in range(1, n)) == list(range(1, n))


class TestWeighted:
    def test_examples(self):
        assert weighted_cot_sum(1, 2) == 0.0
        assert weighted_cot_sum(1, 3) == pytest.approx(-1 / (3 * SQRT3), rel=1e-14)
        assert weighted_cot_sum(5, 1) == 0.0

    def test_general_coprime(self):
        rep = weighted_cot_sum_general(2, 3)
        assert rep.singular_pairs == []
        expected = -math.pi / 2 * (weighted_cot_sum(2, 3) + weighted_cot_sum(3, 2))
        assert rep.value == pytest.approx(expected, rel=1e-14)

    def test_general_22(self):
        rep = weighted_cot_sum_general(2, 2)
        assert rep.value == -0.5
        assert rep.singular_pairs == [(1, 1)]

    def test_general_24_reduces(self):
        assert weighted_cot_sum_general(2, 4).singular_pairs == [(2, 1)]

    @given(st.integers(1, 60), st.integers(1, 60))
    @settings(max_examples=150)
    def test_singular_pair_count(self, m, n):
        r = math.gcd(m, n)
        rep = weighted_cot_sum_general(m, n)
        assert len(rep.singular_pairs) == r - 1
        for k, l in rep.singular_pairs:
            assert k * m == l * n  # k/l = n/m
        assert rep.convention_value == -0.5 * (r - 1)

    @given(st.integers(1, 80), st.integers(1, 80))
    @settings(max_examples=100)
    def test_coprime_matches_direct_double_sum(self, m, n):
        if math.gcd(m, n) != 1:
            return
        rep = weighted_cot_sum_general(m, n)
        direct = -math.pi / 2 * (
            sum(m * k / n / math.tan(math.pi * m * k / n) for k in range(1, n))
            + sum(n * l / m / math.tan(math.pi * n * l / m) for l in range(1, m))
        )
        assert rep.singular_pairs == []
        assert rep.value == pytest.approx(direct, rel=1e-9, abs=1e-9)


class TestBettin:
    def test_examples(self):
        assert bettin_c(1, 2) == 0.0
        assert bettin_c(1, 3) == pytest.approx(1 / (3 * SQRT3), rel=1e-14)
        assert bettin_c(4, 1) == 0.0

    def test_relation_to_weighted(self):
        for h, k in [(1, 7), (3, 10), (5, 12)]:
            assert bettin_c(h, k) == pytest.approx(-weighted_cot_sum(h, k) / h, rel=1e-13)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            bettin_c(2, 4)


class TestInvCos:
    def test_n2(self):
        assert inv_cos_gap_sum(2, math.pi / 2) == pytest.approx(0.5, rel=1e-15)
        assert inv_cos_gap_closed(2, math.pi / 2) == pytest.approx(0.5, rel=1e-15)

    def test_empty(self):
        assert inv_cos_gap_sum(1, 0.7) == 0.0
        assert inv_cos_gap_closed(1, 0.7) == pytest.approx(0.0, abs=1e-15)

    def test_n5(self):
        assert inv_cos_gap_sum(5, 1.0) == pytest.approx(inv_cos_gap_closed(5, 1.0), abs=1e-12)

    def test_excluded(self):
        with pytest.raises(DomainError):
            inv_cos_gap_sum(4, math.pi / 2)

    def test_random_draws(self):
        rng = random.Random(2024)
        done = 0
        while done < 100:
            n = rng.randint(1, 30)
            a = rng.uniform(0.01, 2 * math.pi - 0.01)
            if min(abs(math.sin(a)), abs(math.sin(n * a / 2))) < 1e-3:
                continue
            assert inv_cos_gap_sum(n, a) == pytest.approx(inv_cos_gap_closed(n, a), abs=1e-11)
            done += 1


class TestArctan:
    def test_values(self):
        assert arctan_integral_closed(math.pi / 2) == pytest.approx(math.pi / 4, rel=1e-15)
        assert arctan_integral_closed(3 * math.pi / 2) == pytest.approx(math.pi / 4, rel=1e-15)

    def test_quadrature_2pi_over_3(self):
        a = 2 * math.pi / 3
        est = integrate_to_infinity(lambda z: 1 / (z * z - 2 * math.cos(a) * z + 1), 1.0, 1e-12)
        assert arctan_integral_closed(a) == pytest.approx(est.value, abs=1e-10)
        assert arctan_integral_closed(a) == pytest.approx(0.60459978807807261686, rel=1e-14)

    @pytest.mark.parametrize("a", [0.0, math.pi, 2 * math.pi, -1.0])
    def test_domain(self, a):
        with pytest.raises(DomainError):
            arctan_integral_closed(a)

    def test_random_against_quadrature(self):
        rng = np.random.default_rng(11)
        for a in rng.uniform(0.05, 2 * np.pi - 0.05, 50):
            if abs(a - np.pi) < 0.05:
                continue
            est = integrate_to_infinity(lambda z: 1 / (z * z - 2 * np.cos(a) * z + 1), 1.0, 1e-12)
            assert arctan_integral_closed(a) == pytest.approx(est.value, abs=1e-10)
