"""Assertion helper functions."""
import re
from fractions import Fraction
from typing import Any, Dict, Union

from padic_cauchy.enums import ErrorCode, RegexPatterns

from ..errors import InputParseError, InvalidFieldValueError, ValidationError


def is_prime(n: int) -> bool:
    """Trial division; the primes used here are small (< 10^6)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_prime_valid(p: Any) -> None:
    """
    Checks that p is an integer prime.

    :param p: The candidate prime.
    :returns: None, only raises exceptions.
    :rtype: None
    """
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ValidationError(
            message=f"[{p}] is not a prime.",
            error_code=ErrorCode.NOT_PRIME.value,
        )


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def is_precision_valid(config: Dict[str, Any]) -> None:
    """
    Checks that config.precision is a valid value.

    :param dict config: The config dictionary passed into `PadicConfig`.
    :returns: None, only raises exceptions.
    :rtype: None
    """
    if "precision" in config and (not _is_int(config["precision"]) or config["precision"] < 1):
        raise InvalidFieldValueError(
            field_name="precision",
            reason="Precision must be an integer of at least 1.",
            field_value=config["precision"],
        )


def is_terms_valid(config: Dict[str, Any]) -> None:
    """Checks that config.terms (the series depth K) is at least 4."""
    if "terms" in config and (not _is_int(config["terms"]) or config["terms"] < 4):
        raise InvalidFieldValueError(
            field_name="terms",
            reason="Terms must be an integer of at least 4.",
            field_value=config["terms"],
        )


def is_window_valid(config: Dict[str, Any]) -> None:
    """Checks that config.window is None or lies between 1 and config.terms."""
    window = config.get("window")
    if window is None:
        return
    terms = config.get("terms")
    if not _is_int(window) or window < 1 or (terms is not None and window > terms):
        raise InvalidFieldValueError(
            field_name="window",
            reason="Window must be an integer between 1 and terms.",
            field_value=window,
        )


def is_epsilon_valid(config: Dict[str, Any]) -> None:
    """Checks that config.epsilon is a rational strictly between 0 and 1."""
    if "epsilon" not in config:
        return
    try:
        epsilon = to_fraction(config["epsilon"])
    except InputParseError:
        epsilon = None
    if epsilon is None or not 0 < epsilon < 1:
        raise InvalidFieldValueError(
            field_name="epsilon",
            reason="Epsilon must be a rational in (0, 1).",
            field_value=config["epsilon"],
        )


def is_positive_int_valid(config: Dict[str, Any], field_name: str) -> None:
    """Checks that an optional integer field is at least 1."""
    if field_name in config and (not _is_int(config[field_name]) or config[field_name] < 1):
        raise InvalidFieldValueError(
            field_name=field_name,
            reason=f"{field_name.replace('_', ' ').capitalize()} must be an integer of at least 1.",
            field_value=config[field_name],
        )


def parse_rational(text: str) -> Fraction:
    """
    Parse `a/b` or an integer into an exact rational.

    :param str text: The literal to parse.
    :returns: The rational value.
    :rtype: Fraction
    """
    match = re.match(RegexPatterns.RATIONAL.value, str(text))
    if match is None:
        raise InputParseError("Not a rational literal", source=str(text))
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InputParseError("Rational literal has a zero denominator", source=str(text))
    return Fraction(numerator, denominator)


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an integer, a rational literal or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if _is_int(value):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputParseError("Not a rational value", source=repr(value))

