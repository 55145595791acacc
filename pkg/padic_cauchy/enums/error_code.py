"""Enumeration of error codes raised by padic-cauchy."""
from enum import Enum


class ErrorCode(Enum):
    """ErrorCode enumeration that provides members used for Error Codes."""

    ZERO_DENOMINATOR = "zero_denominator"
    """A rational with denominator zero was supplied."""

    PRIME_MISMATCH = "prime_mismatch"
    """Two p-adic values (or vectors, operators) over different primes were combined."""

    DIVISION_BY_ZERO = "division_by_zero"
    """Division by an exact zero."""

    PRECISION_EXHAUSTED = "precision_exhausted"
    """
        A value became indistinguishable from zero at the available precision while
        an exact answer (a norm, a quotient) was required.
    """

    DIMENSION_MISMATCH = "dimension_mismatch"
    """A matrix was applied to a vector of the wrong length, or rows have unequal length."""

    SPACE_MISMATCH = "space_mismatch"
    """Two analytic functions (or an operator and a function) live in different spaces."""

    INSUFFICIENT_DEPTH = "insufficient_depth"
    """A sequence is too short for the requested window or for the operation."""

    NOT_IN_E_ALPHA = "not_in_e_alpha"
    """The norm sequence is still growing against alpha at the computed depth."""

    OUTSIDE_DISK = "outside_disk"
    """An evaluation point lies outside the disk of convergence."""

    INPUT_PARSE = "input_parse"
    """A problem file, rational or polynomial could not be parsed."""

    FIELD_VALUE_REQUIRED = "field_value_required"
    """A required field was not provided."""

    INVALID_FIELD_VALUE = "invalid_field_value"
    """A field was set to an invalid value."""

    NOT_PRIME = "not_prime"
    """The supplied modulus is not a prime."""

    UNSPECIFIED = "unspecified"
    """An error has occurred, but it hasn't been assigned a code."""
