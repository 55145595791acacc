"""Exact exponent helpers."""
import math
from fractions import Fraction
from typing import Union


def ceil_div(numerator: int, denominator: int) -> int:
    """Ceiling of an integer quotient for a positive denominator."""
    return -((-numerator) // denominator)


def ceil_exponent(value: Union[int, Fraction]) -> int:
    """The least integer at or above an exact rational."""
    value = Fraction(value)
    return ceil_div(value.numerator, value.denominator)


def floor_exponent(value: Union[int, Fraction]) -> int:
    value = Fraction(value)
    return value.numerator // value.denominator


def radius_law_exponent(p: int) -> Fraction:
    """-1/(p-1), the exponent of lim |n!|_p^{1/n}."""
    return Fraction(-1, p - 1)


def is_finite(exponent) -> bool:
    return not (isinstance(exponent, float) and math.isinf(exponent))
