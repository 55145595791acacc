"""Tests for p-adic numbers, magnitudes and Legendre's formula."""
import math
import operator
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_cauchy.errors import (
    DivisionByZeroError,
    InputParseError,
    InvalidFieldValueError,
    PrecisionExhaustedError,
    PrimeMismatchError,
    ValidationError,
    ZeroDenominatorError,
)
from padic_cauchy.padic_arith import (
    LogNorm,
    Prime,
    add,
    agrees_with,
    compact,
    digit_sum,
    div,
    divide_int,
    embed_rational,
    exact_rational,
    exact_zero,
    factorial_norm_bound,
    from_int,
    from_rational,
    mul,
    norm,
    norm_bound,
    parse_padic,
    power_of_p,
    render,
    sub,
    valuation,
    vp_factorial,
    with_absolute_precision,
)
from padic_cauchy.oracle import reduce_mod_pN

primes = st.sampled_from([2, 3, 5, 7, 11])
nonzero_ints = st.integers(min_value=-(10 ** 6), max_value=10 ** 6).filter(lambda n: n != 0)

OPERATIONS = {"add": add, "sub": sub, "mul": mul, "div": div}
EXACT = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


@st.composite
def operand_pairs(draw):
    """(p, q, x, r, y): nonzero rationals q, r and their images x, y in Q_p."""
    p = draw(primes)

    def operand():
        q = Fraction(draw(nonzero_ints), draw(st.integers(min_value=1, max_value=10 ** 4)))
        if draw(st.booleans()):
            return q, exact_rational(q.numerator, q.denominator, p)
        precision = draw(st.integers(min_value=1, max_value=20))
        return q, from_rational(q.numerator, q.denominator, p, precision)

    q, x = operand()
    r, y = operand()
    return p, q, x, r, y


class TestPrime:
    def test_rejects_composites(self) -> None:
        with pytest.raises(ValidationError):
            Prime(9)

    def test_int_value(self) -> None:
        assert int(Prime(7)) == 7


class TestFromRational:
    def test_one_half_in_q3(self) -> None:
        x = from_rational(1, 2, 3, 4)
        assert x.valuation == 0
        assert x.unit_digits == (2, 1, 1, 1)
        assert compact(x) == "val=0 digits=[2,1,1,1] prec=4"

    def test_long_form(self) -> None:
        assert render(from_rational(1, 2, 3, 4)) == "2 + 1*3 + 1*3^2 + 1*3^3 + O(3^4)"

    def test_valuation_from_the_denominator(self) -> None:
        x = from_rational(1, 9, 3, 5)
        assert x.valuation == -2
        assert x.absolute_precision == 3

    def test_zero_denominator(self) -> None:
        with pytest.raises(ZeroDenominatorError):
            from_rational(1, 0, 3, 4)

    def test_precision_must_be_positive(self) -> None:
        with pytest.raises(InvalidFieldValueError):
            from_rational(1, 2, 3, 0)

    def test_integers_embed_exactly(self) -> None:
        assert embed_rational(12, 3, 4).is_exact
        assert not embed_rational(Fraction(1, 2), 3, 4).is_exact


class TestArithmetic:
    def test_cancellation_gives_zero_at_precision(self) -> None:
        x = from_rational(1, 2, 3, 4)
        difference = x - x
        assert difference.is_zero_at_precision
        assert difference.absolute_precision == 4
        assert norm_bound(difference) == LogNorm(-4)
        with pytest.raises(PrecisionExhaustedError):
            norm(difference)

    def test_exact_arithmetic_stays_exact(self) -> None:
        half = exact_rational(1, 2, 3)
        total = half + half
        assert total.is_exact
        assert total.to_fraction() == 1

    def test_mixed_precision_uses_the_smaller(self) -> None:
        total = from_rational(1, 2, 3, 4) + from_int(1, 3)
        assert total.absolute_precision == 4
        assert agrees_with(total, from_rational(3, 2, 3, 10))

    def test_division_by_exact_zero(self) -> None:
        with pytest.raises(DivisionByZeroError):
            from_int(1, 3) / exact_zero(3)

    def test_division_by_zero_at_precision(self) -> None:
        x = from_rational(1, 2, 3, 4)
        with pytest.raises(PrecisionExhaustedError):
            from_int(1, 3) / (x - x)

    def test_prime_mismatch(self) -> None:
        with pytest.raises(PrimeMismatchError):
            from_int(1, 3) + from_int(1, 5)

    def test_divide_int_lowers_absolute_precision(self) -> None:
        x = from_rational(1, 1, 3, 5)
        quotient = divide_int(x, 3)
        assert quotient.valuation == -1
        assert quotient.absolute_precision == 4

    def test_absolute_precision_cap_of_exact_zero(self) -> None:
        capped = with_absolute_precision(exact_zero(3), 5)
        assert capped.is_zero_at_precision
        assert capped.absolute_precision == 5

    def test_power_of_p(self) -> None:
        assert norm(power_of_p(3, 5)) == LogNorm(-3)
        assert valuation(from_int(18, 3)) == 2

    def test_rational_reconstruction(self) -> None:
        assert from_rational(3, 7, 5, 20).to_rational() == Fraction(3, 7)

    def test_one_half_times_two(self) -> None:
        product = mul(from_rational(1, 2, 3, 6), from_rational(2, 1, 3, 6))
        assert (product.valuation, product.unit, product.precision) == (0, 1, 6)
        assert agrees_with(product, from_int(1, 3))


class TestArithmeticProperties:
    """Exact rationals mixed with values known to 1 ... 20 digits."""

    @settings(max_examples=10_000, deadline=None)
    @given(operand_pairs())
    def test_norm_is_multiplicative(self, pair) -> None:
        _, _, x, _, y = pair
        assert norm(mul(x, y)) == norm(x) * norm(y)
        assert norm(div(from_int(1, x.prime), x)) == LogNorm.one() / norm(x)

    @settings(max_examples=10_000, deadline=None)
    @given(operand_pairs())
    def test_ultrametric_inequality(self, pair) -> None:
        _, _, x, _, y = pair
        larger = max(norm(x), norm(y))
        assert norm_bound(add(x, y)) <= larger
        if norm(x) != norm(y):
            assert norm(add(x, y)) == larger

    @settings(max_examples=10_000, deadline=None)
    @given(operand_pairs(), st.sampled_from(["add", "sub", "mul", "div"]))
    def test_agrees_with_exact_rationals(self, pair, operation: str) -> None:
        p, q, x, r, y = pair
        computed, exact = OPERATIONS[operation](x, y), EXACT[operation](q, r)
        assert agrees_with(computed, reduce_mod_pN(exact, p, 40))


class TestParsing:
    def test_compact_form_round_trip(self) -> None:
        parsed = parse_padic("val=0 digits=[2,1,1,1] prec=4", 3, 10)
        assert parsed == from_rational(1, 2, 3, 4)

    def test_rational_literal(self) -> None:
        assert parse_padic("1/2", 3, 4) == from_rational(1, 2, 3, 4)
        assert parse_padic("-6", 3, 4).to_fraction() == -6

    def test_digits_must_be_below_p(self) -> None:
        with pytest.raises(InputParseError):
            parse_padic("val=0 digits=[3] prec=2", 3, 4)

    def test_zero_denominator_literal(self) -> None:
        with pytest.raises(InputParseError):
            parse_padic("1/0", 3, 4)


class TestLogNorm:
    def test_render(self) -> None:
        assert LogNorm(-1).render(3) == "3^(-1)"
        assert LogNorm(Fraction(1, 2)).render() == "p^(1/2)"
        assert LogNorm.zero().render() == "0"
        assert LogNorm.unbounded().render() == "unbounded"

    def test_zero_times_unbounded_is_undefined(self) -> None:
        with pytest.raises(ValueError):
            LogNorm.zero() * LogNorm.unbounded()

    def test_ordering(self) -> None:
        assert LogNorm.zero() < LogNorm(-5) < LogNorm.one() < LogNorm.unbounded()

    def test_root(self) -> None:
        assert LogNorm(-3).root(2) == LogNorm(Fraction(-3, 2))


class TestLegendre:
    @pytest.mark.parametrize(
        "n, p, expected", [(0, 2, 0), (1, 5, 0), (10, 2, 8), (25, 5, 6), (100, 3, 48)]
    )
    def test_vp_factorial(self, n: int, p: int, expected: int) -> None:
        assert vp_factorial(n, p) == expected

    def test_negative_argument(self) -> None:
        with pytest.raises(InvalidFieldValueError):
            vp_factorial(-1, 3)

    def test_digit_sum(self) -> None:
        assert digit_sum(10, 2) == 2
        assert digit_sum(100, 3) == 4

    @given(st.integers(min_value=0, max_value=300), primes)
    def test_against_the_factorial(self, n: int, p: int) -> None:
        value, count = math.factorial(n), 0
        while value % p == 0:
            value //= p
            count += 1
        assert vp_factorial(n, p) == count

    @given(st.integers(min_value=0, max_value=5000), primes)
    def test_factorial_norm_bound(self, k: int, p: int) -> None:
        bound = factorial_norm_bound(k, p)
        assert bound.holds
        assert bound.inverse_norm == LogNorm(vp_factorial(k, p))
