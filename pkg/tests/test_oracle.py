"""Tests for the exact rational reference computations."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_cauchy.oracle import (
    exact_derivative_partial_sum,
    exact_partial_derivative,
    exact_product,
    exact_series_partial_sum,
    exp_partial_sum,
    factorial_valuation_by_counting,
    factorial_valuation_by_factorization,
    factorial_valuation_table,
    rational_valuation,
    reduce_mod_pN,
)
from padic_cauchy.padic_arith import PLUS_INFINITY, from_rational, vp_factorial


class TestValuations:
    @pytest.mark.parametrize(
        "q, p, expected",
        [(Fraction(9, 5), 3, 2), (Fraction(1, 8), 2, -3), (Fraction(-50, 3), 5, 2)],
    )
    def test_rational_valuation(self, q: Fraction, p: int, expected: int) -> None:
        assert rational_valuation(q, p) == expected

    def test_zero(self) -> None:
        assert rational_valuation(Fraction(0), 3) == PLUS_INFINITY

    def test_table(self) -> None:
        assert factorial_valuation_table(10, 2) == [0, 0, 1, 1, 3, 3, 4, 4, 7, 7, 8]

    @settings(max_examples=50)
    @given(st.integers(0, 200), st.sampled_from([2, 3, 5, 7, 11]))
    def test_three_ways_agree(self, n: int, p: int) -> None:
        expected = vp_factorial(n, p)
        assert factorial_valuation_by_counting(n, p) == expected
        assert factorial_valuation_by_factorization(n, p) == expected
        assert factorial_valuation_table(n, p)[-1] == expected


class TestReduction:
    def test_one_half_in_q3(self) -> None:
        x = reduce_mod_pN(Fraction(1, 2), 3, 4)
        assert x.unit_digits == (2, 1, 1, 1)
        assert x == from_rational(1, 2, 3, 4)

    def test_keeps_the_valuation(self) -> None:
        x = reduce_mod_pN(Fraction(24), 2, 5)
        assert x.valuation == 3
        assert x.unit_digits == (1, 1)

    def test_zero(self) -> None:
        assert reduce_mod_pN(Fraction(0), 5, 3).is_exact_zero


class TestSeries:
    def test_nilpotent_partial_sum(self) -> None:
        assert exact_series_partial_sum([[0, 1], [0, 0]], [0, 1], Fraction(1), 8) == [1, 1]

    def test_scalar_exponential(self) -> None:
        assert exact_series_partial_sum([[3]], [1], Fraction(1), 10) == [
            exp_partial_sum(Fraction(3), 10)
        ]

    def test_derivative_partial_sum(self) -> None:
        assert exact_derivative_partial_sum([[2]], [1], Fraction(1, 2), 3) == [
            2 * exp_partial_sum(Fraction(1), 2)
        ]

    def test_exp_partial_sum(self) -> None:
        assert exp_partial_sum(Fraction(1), 3) == Fraction(8, 3)


class TestPolynomials:
    def test_partial_derivative(self) -> None:
        f = {(2, 1): Fraction(3, 5), (0, 1): Fraction(-1)}
        assert exact_partial_derivative(f, 2, 1) == {(1, 1): Fraction(6, 5)}

    def test_product(self) -> None:
        f = {(1, 0): Fraction(1), (0, 0): Fraction(1)}
        g = {(1, 0): Fraction(1), (0, 0): Fraction(-1)}
        assert exact_product(f, g, 2) == {(2, 0): 1, (0, 0): -1}
