"""Errors that will be raised through-out padic-cauchy."""
import json
from typing import Any, Optional

from padic_cauchy.enums import ErrorCode, ErrorType, does_member_value_exist


class PadicError(Exception):
    def __init__(
        self,
        message: str,
        error_type: Optional[str] = None,
        error_code: Optional[str] = None,
    ) -> None:
        """Base exception class that all other padic-cauchy errors will inherit from."""
        super(PadicError, self).__init__(message)
        self.message = message
        self.error_type = error_type
        self.error_code = error_code
        self._are_enums_valid()

    def _are_enums_valid(self):
        if self.error_type is None:
            pass  # noqa
        elif not does_member_value_exist(self.error_type, ErrorType):
            raise ValueError(
                f"Error type must be a member of ErrorType enum - [{self.error_type}] provided."
            )

        if self.error_code is None:
            pass  # noqa
        elif not does_member_value_exist(self.error_code, ErrorCode):
            raise ValueError(
                f"Error code must be a member of ErrorCode enum - [{self.error_code}] provided."
            )

    def to_dict(self):
        return {key: _plain(value) for key, value in self.__dict__.items()}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _plain(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


class ValidationError(PadicError):
    """An exception that indicates a given value does not match its required type."""

    def __init__(self, message: str, error_code: Optional[str] = None) -> None:
        super(ValidationError, self).__init__(
            message=message,
            error_type=ErrorType.VALIDATION.value,
            error_code=error_code or ErrorCode.FIELD_VALUE_REQUIRED.value,
        )


class InvalidFieldValueError(PadicError):
    def __init__(self, field_name: str, reason: str, field_value) -> None:
        """This error occurs when a field has been set to an invalid value."""
        self.field_name = field_name
        self.field_value = field_value
        super(InvalidFieldValueError, self).__init__(
            message=f"{self.field_name} - {reason} {self.field_value} was provided.",
            error_type=ErrorType.VALIDATION.value,
            error_code=ErrorCode.INVALID_FIELD_VALUE.value,
        )


class InputParseError(PadicError):
    def __init__(self, message: str, source: Optional[str] = None) -> None:
        """A problem file, rational, p-adic literal or polynomial could not be parsed."""
        self.source = source
        super(InputParseError, self).__init__(
            message=message if source is None else f"{message} [{source}]",
            error_type=ErrorType.VALIDATION.value,
            error_code=ErrorCode.INPUT_PARSE.value,
        )


class ZeroDenominatorError(PadicError):
    def __init__(self, numerator: int) -> None:
        """A rational with a zero denominator was supplied."""
        self.numerator = numerator
        super(ZeroDenominatorError, self).__init__(
            message=f"Denominator of {numerator}/0 must be nonzero.",
            error_type=ErrorType.ARITHMETIC.value,
            error_code=ErrorCode.ZERO_DENOMINATOR.value,
        )


class PrimeMismatchError(PadicError):
    def __init__(self, left: int, right: int) -> None:
        """Values over different primes were combined."""
        self.left = left
        self.right = right
        super(PrimeMismatchError, self).__init__(
            message=f"Cannot combine a {left}-adic value with a {right}-adic value.",
            error_type=ErrorType.ARITHMETIC.value,
            error_code=ErrorCode.PRIME_MISMATCH.value,
        )


class DivisionByZeroError(PadicError):
    def __init__(self) -> None:
        """Division by an exact zero."""
        super(DivisionByZeroError, self).__init__(
            message="Division by an exact zero.",
            error_type=ErrorType.ARITHMETIC.value,
            error_code=ErrorCode.DIVISION_BY_ZERO.value,
        )


class PrecisionExhaustedError(PadicError):
    def __init__(self, message: str, depth: Optional[int] = None) -> None:
        """A value is indistinguishable from zero where an exact answer was required."""
        self.depth = depth
        super(PrecisionExhaustedError, self).__init__(
            message=message if depth is None else f"{message} (at depth {depth})",
            error_type=ErrorType.PRECISION.value,
            error_code=ErrorCode.PRECISION_EXHAUSTED.value,
        )


class DimensionMismatchError(PadicError):
    def __init__(self, expected: int, received: int) -> None:
        """An operand has the wrong dimension."""
        self.expected = expected
        self.received = received
        super(DimensionMismatchError, self).__init__(
            message=f"Expected dimension {expected} - {received} was provided.",
            error_type=ErrorType.DOMAIN.value,
            error_code=ErrorCode.DIMENSION_MISMATCH.value,
        )


class SpaceMismatchError(PadicError):
    def __init__(self, message: str) -> None:
        """Operands live in different spaces (prime, variables, rho or truncation)."""
        super(SpaceMismatchError, self).__init__(
            message=message,
            error_type=ErrorType.DOMAIN.value,
            error_code=ErrorCode.SPACE_MISMATCH.value,
        )


class InsufficientDepthError(PadicError):
    def __init__(self, depth: int, required: int) -> None:
        """A sequence is shorter than an operation needs."""
        self.depth = depth
        self.required = required
        super(InsufficientDepthError, self).__init__(
            message=f"Depth {depth} is insufficient - at least {required} is required.",
            error_type=ErrorType.CONVERGENCE.value,
            error_code=ErrorCode.INSUFFICIENT_DEPTH.value,
        )


class NotInEalphaError(PadicError):
    def __init__(self, alpha: str, depth: int) -> None:
        """The norm sequence still grows against alpha at the computed depth."""
        self.alpha = alpha
        self.depth = depth
        super(NotInEalphaError, self).__init__(
            message=f"Norm sequence still grows against alpha = {alpha} at depth {depth}.",
            error_type=ErrorType.CONVERGENCE.value,
            error_code=ErrorCode.NOT_IN_E_ALPHA.value,
        )


class OutsideDiskError(PadicError):
    def __init__(self, point: str, radius: str) -> None:
        """The evaluation point is outside the disk of convergence."""
        self.point = point
        self.radius = radius
        super(OutsideDiskError, self).__init__(
            message=f"Point {point} lies outside the open disk of radius {radius}.",
            error_type=ErrorType.DOMAIN.value,
            error_code=ErrorCode.OUTSIDE_DISK.value,
        )
