import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from zetamono.combinatorics import (
    BinomialCase,
    DivergenceResult,
    StirlingTable,
    bell_numbers,
    binom,
    classify_binomial,
    falling_factorial,
    stirling2,
    stirling2_explicit,
)
from zetamono.errors import RangeError
from zetamono.specfun import gamma


def rel(a, b):
    return abs(a - b) / abs(b)


class TestStirling:
    def test_small_values(self):
        assert stirling2(2, 1) == stirling2_explicit(2, 1) == 1
        assert stirling2(2, 2) == stirling2_explicit(2, 2) == 1
        assert stirling2(4, 2) == stirling2_explicit(4, 2) == 7

    def test_diagonal(self):
        for k in range(1, 11):
            assert stirling2(k, k) == 1
            assert stirling2(k, 1) == 1

    def test_conventions(self):
        assert stirling2(0, 0) == 1
        assert all(stirling2(k, 0) == 0 for k in range(1, 10))

    def test_recurrence_holds(self):
        table = StirlingTable(40)
        for k in range(1, 40):
            for p in range(1, k + 1):
                assert table(k + 1, p) == p * table(k, p) + table(k, p - 1)

    def test_matches_explicit_sum(self):
        for k in range(21):
            for p in range(k + 1):
                assert stirling2(k, p) == stirling2_explicit(k, p)

    def test_row_sums_are_bell_numbers(self):
        bells = bell_numbers(10)
        assert bells[:6] == [1, 1, 2, 5, 15, 52]
        for k in range(11):
            assert sum(StirlingTable(10).row(k)) == bells[k]

    def test_exceeds_64_bits_exactly(self):
        s = stirling2(64, 32)
        assert s > 2**64
        assert s == stirling2_explicit(64, 32)

    @pytest.mark.parametrize("k,p", [(3, 4), (65, 2), (-1, 0)])
    def test_range_errors(self, k, p):
        with pytest.raises(RangeError):
            stirling2(k, p)


class TestFallingFactorial:
    def test_empty_product(self):
        assert falling_factorial(-3.7, 0) == 1.0

    def test_values(self):
        assert falling_factorial(-3, 2) == 12.0
        assert falling_factorial(5, 5) == 120.0
        assert falling_factorial(5, 6) == 0.0
        assert falling_factorial(0.5, 3) == pytest.approx(0.5 * -0.5 * -1.5)


class TestClassify:
    @pytest.mark.parametrize(
        "z,w,case",
        [
            (5, 2, BinomialCase.GAMMA_RATIO),
            (2.5, 1.2, BinomialCase.GAMMA_RATIO),
            (-0.5, 3, BinomialCase.GAMMA_RATIO),
            (2.5, -1, BinomialCase.ZERO),
            (2, 3, BinomialCase.ZERO),
            (-3, 2, BinomialCase.FALLING_OVER_W),
            (-1, 0, BinomialCase.FALLING_OVER_W),
            (-2, -3, BinomialCase.FALLING_OVER_ZW),
            (-2, -1, BinomialCase.ZERO_NEGATIVE),
            (-1, 0.5, BinomialCase.INFINITE),
        ],
    )
    def test_each_branch(self, z, w, case):
        assert classify_binomial(z, w) is case

    def test_integrality_is_exact(self):
        assert classify_binomial(-3 + 1e-15, 2) is BinomialCase.GAMMA_RATIO

    @settings(max_examples=300)
    @given(
        st.one_of(st.integers(-8, 8).map(float), st.floats(-8, 8)),
        st.one_of(st.integers(-8, 8).map(float), st.floats(-8, 8)),
    )
    def test_total(self, z, w):
        assert isinstance(classify_binomial(z, w), BinomialCase)


class TestBinom:
    def test_examples(self):
        assert binom(5, 2) == 10
        assert binom(-3, 2) == 6
        assert binom(-2, -1) == 0
        assert binom(2.5, -1) == 0

    def test_divergent(self):
        v = binom(-1, 0.5)
        assert isinstance(v, DivergenceResult)
        assert math.isinf(v)

    def test_falling_over_zw(self):
        # z = -2, w = -3: <z>_{z-w} / (z-w)! = <-2>_1 / 1! = -2
        assert binom(-2, -3) == -2.0

    def test_integer_consistency(self):
        for z in range(21):
            for w in range(z + 1):
                exact = math.factorial(z) // (math.factorial(w) * math.factorial(z - w))
                assert rel(binom(z, w), exact) <= 1e-12

    @pytest.mark.parametrize("w", [1.2, 2.5, 4.9])
    def test_pascal(self, w):
        z = 7.3
        assert rel(binom(z, w), binom(z - 1, w) + binom(z - 1, w - 1)) <= 1e-10

    @pytest.mark.parametrize("z,w", [(7.3, 2.1), (-0.5, 0.25), (-2.5, 1.25), (12.75, 4.5)])
    def test_symmetry(self, z, w):
        assert rel(binom(z, w), binom(z, z - w)) <= 1e-12

    def test_negative_noninteger_gamma_branch(self):
        # C(-1/2, 2) = (-1/2)(-3/2)/2 = 3/8
        assert rel(binom(-0.5, 2), 0.375) <= 1e-12

    def test_gamma_bridge(self):
        for alpha in (0.5, 1.0, 2.5):
            for x in (1.1, 2.0, 5.5, 10.25, 19.9):
                lhs = gamma(x + alpha + 1) / gamma(x + 1)
                rhs = gamma(alpha + 1) * binom(x + alpha, alpha)
                assert rel(lhs, rhs) <= 1e-11

    @settings(max_examples=200)
    @given(st.floats(0.1, 30), st.floats(0.1, 30))
    def test_symmetry_property(self, z, w):
        assume(not float(z - w).is_integer() and z - w > -20)
        assert rel(binom(z, w), binom(z, z - w)) <= 1e-11
