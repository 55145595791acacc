"""Enumeration of error types raised by padic-cauchy."""
from enum import Enum


class ErrorType(Enum):
    """Indicates the type of an error: a broad category rather than a specific error."""

    VALIDATION = "validation"
    """
        Something is wrong with the input provided, such as missing a required field,
        or an illegal value or combination of values. This error type always means
        that some change needs to be made to the input before retrying.
    """

    ARITHMETIC = "arithmetic"
    """An operation is undefined for its operands (division by zero, mixed primes)."""

    PRECISION = "precision"
    """Tracked precision ran out before an exact answer could be produced."""

    DOMAIN = "domain"
    """Operands live in incompatible spaces or the point lies outside a disk."""

    CONVERGENCE = "convergence"
    """A finite-depth computation cannot support the requested conclusion."""

    SYSTEM = "system"
    """An unknown or unexpected error occurred."""
