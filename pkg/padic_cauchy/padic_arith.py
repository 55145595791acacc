"""Arithmetic in Q_p at tracked precision, exact magnitudes, and factorial valuations."""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Optional, Tuple, Union

from .enums import RegexPatterns
from .errors import (
    DivisionByZeroError,
    InputParseError,
    InvalidFieldValueError,
    PrecisionExhaustedError,
    PrimeMismatchError,
    ZeroDenominatorError,
)
from .util import is_prime_valid, parse_rational

PLUS_INFINITY = math.inf
MINUS_INFINITY = -math.inf

Valuation = Union[int, float]
"""An integer valuation, or PLUS_INFINITY for an exact zero."""

Exponent = Union[Fraction, float]
"""An exact rational exponent, or +/- infinity."""

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Prime:
    p: int

    def __post_init__(self) -> None:
        is_prime_valid(self.p)

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)


@lru_cache(maxsize=None)
def _prime(p: int) -> Prime:
    return Prime(p)


def as_prime(p: Union[int, Prime]) -> Prime:
    """Accept either a bare integer or a Prime."""
    return p if isinstance(p, Prime) else _prime(p)


def exponent_str(exponent: Exponent) -> str:
    """Render an exponent: `-inf`, `inf`, `3/4`, `-2`."""
    if exponent == MINUS_INFINITY:
        return "-inf"
    if exponent == PLUS_INFINITY:
        return "inf"
    return str(exponent)


def _as_exponent(value: Union[int, Fraction, float]) -> Exponent:
    if isinstance(value, float):
        if math.isinf(value):
            return value
        raise ValueError(f"Finite exponents must be exact rationals - {value} was provided.")
    return Fraction(value)


@total_ordering
@dataclass(frozen=True, eq=False)
class LogNorm:
    """
    A magnitude p^exponent, stored by its exact exponent.

    The exponent -inf is the norm of zero and +inf marks an unbounded quantity
    (the radius of an entire series).
    """

    exponent: Exponent

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", _as_exponent(self.exponent))

    @classmethod
    def zero(cls) -> "LogNorm":
        return cls(MINUS_INFINITY)

    @classmethod
    def one(cls) -> "LogNorm":
        return cls(0)

    @classmethod
    def unbounded(cls) -> "LogNorm":
        return cls(PLUS_INFINITY)

    @property
    def is_zero(self) -> bool:
        return self.exponent == MINUS_INFINITY

    @property
    def is_unbounded(self) -> bool:
        return self.exponent == PLUS_INFINITY

    @property
    def is_finite(self) -> bool:
        return not (self.is_zero or self.is_unbounded)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogNorm):
            return NotImplemented
        return self.exponent == other.exponent

    def __hash__(self) -> int:
        return hash(self.exponent)

    def __lt__(self, other: "LogNorm") -> bool:
        if not isinstance(other, LogNorm):
            return NotImplemented
        return self.exponent < other.exponent

    def __mul__(self, other: "LogNorm") -> "LogNorm":
        if (self.is_zero and other.is_unbounded) or (self.is_unbounded and other.is_zero):
            raise ValueError("The product of a zero and an unbounded magnitude is undefined.")
        return LogNorm(self.exponent + other.exponent)

    def __truediv__(self, other: "LogNorm") -> "LogNorm":
        if other.is_zero:
            raise DivisionByZeroError()
        if self.is_unbounded and other.is_unbounded:
            raise ValueError("The quotient of two unbounded magnitudes is undefined.")
        return LogNorm(self.exponent - other.exponent)

    def __pow__(self, k: Rational) -> "LogNorm":
        if k == 0:
            return LogNorm.one()
        if k < 0:
            return LogNorm.one() / (self ** (-k))
        return LogNorm(self.exponent * k)

    def root(self, k: int) -> "LogNorm":
        """The k-th root, i.e. the exponent divided by k."""
        return LogNorm(self.exponent / k) if self.is_finite else self

    def render(self, p: Optional[Union[int, Prime]] = None) -> str:
        if self.is_zero:
            return "0"
        if self.is_unbounded:
            return "unbounded"
        base = "p" if p is None else str(int(p))
        return f"{base}^({self.exponent})"

    def __str__(self) -> str:
        return self.render()


def digit_sum(n: int, p: Union[int, Prime]) -> int:
    """s_p(n), the sum of the base-p digits of n."""
    base = int(p)
    total = 0
    while n:
        n, digit = divmod(n, base)
        total += digit
    return total


def vp_factorial(n: int, p: Union[int, Prime]) -> int:
    """
    v_p(n!) by Legendre's formula (n - s_p(n)) / (p - 1).

    :param int n: A nonnegative integer.
    :param p: The prime.
    :returns: The exact valuation of n!.
    :rtype: int
    """
    if n < 0:
        raise InvalidFieldValueError(
            field_name="n", reason="Factorials need a nonnegative argument.", field_value=n
        )
    base = int(as_prime(p))
    return (n - digit_sum(n, base)) // (base - 1)


@dataclass(frozen=True)
class FactorialBound:
    k: int
    inverse_norm: LogNorm
    """1/|k!|_p = p^{v_p(k!)}, exact."""
    bound: LogNorm
    """p^{k/(p-1)}."""
    holds: bool


def factorial_norm_bound(k: int, p: Union[int, Prime]) -> FactorialBound:
    """The exact value of 1/|k!|_p together with the bound 1/|k!|_p <= p^{k/(p-1)}."""
    base = int(as_prime(p))
    inverse_norm = LogNorm(vp_factorial(k, base))
    bound = LogNorm(Fraction(k, base - 1))
    return FactorialBound(k=k, inverse_norm=inverse_norm, bound=bound, holds=inverse_norm <= bound)


def _split(n: int, p: int) -> Tuple[int, int]:
    """Write a nonzero integer n as p^v * m with p not dividing m."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def _mod_unit(unit: Rational, p: int, r: int) -> int:
    """Reduce a p-integral rational modulo p^r."""
    modulus = p ** r
    if isinstance(unit, Fraction):
        return unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    return unit % modulus


def rational_reconstruction(residue: int, modulus: int) -> Optional[Fraction]:
    """
    Find a/b with a = b * residue mod modulus and |a|, b <= sqrt(modulus / 2).

    Returns None when no such fraction exists.
    """
    bound = math.isqrt(modulus // 2)
    r0, r1 = modulus, residue % modulus
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0:
        return None
    numerator, denominator = (r1, s1) if s1 > 0 else (-r1, -s1)
    if denominator > bound or math.gcd(denominator, modulus) != 1:
        return None
    if (numerator - residue * denominator) % modulus != 0:
        return None
    return Fraction(numerator, denominator)


@dataclass(frozen=True)
class PadicNumber:
    """
    An element of Q_p.

    Three kinds of value share this type:

    * finite precision: p^valuation * unit, unit an integer in [1, p^precision) prime to p,
      known modulo p^(valuation + precision);
    * exact: precision is PLUS_INFINITY and unit is a rational prime to p (an exact zero
      has valuation PLUS_INFINITY and unit 0);
    * zero at precision: unit 0, precision 0, the value is only known to be O(p^valuation).
    """

    prime: Prime
    valuation: Valuation
    unit: Rational
    precision: Union[int, float]

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def is_exact(self) -> bool:
        return self.precision == PLUS_INFINITY

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation == PLUS_INFINITY

    @property
    def is_zero_at_precision(self) -> bool:
        return self.unit == 0 and not self.is_exact_zero

    @property
    def is_zero(self) -> bool:
        """True for an exact zero and for a value indistinguishable from zero."""
        return self.unit == 0

    @property
    def absolute_precision(self) -> Valuation:
        if self.is_exact:
            return PLUS_INFINITY
        return self.valuation + self.precision

    @property
    def unit_digits(self) -> Tuple[int, ...]:
        """Base-p digits d0, d1, ... of the unit, trailing zeros dropped."""
        if self.unit == 0:
            return tuple()
        if self.is_exact:
            residue = _mod_unit(self.unit, self.p, _EXACT_DIGITS)
        else:
            residue = self.unit
        digits = []
        while residue:
            residue, digit = divmod(residue, self.p)
            digits.append(digit)
        return tuple(digits)

    def to_fraction(self) -> Fraction:
        """The rational representative p^valuation * unit (0 for either kind of zero)."""
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def to_rational(self) -> Optional[Fraction]:
        """The small rational this value is congruent to, when one exists."""
        if self.unit == 0 or self.is_exact:
            return self.to_fraction()
        unit = rational_reconstruction(self.unit, self.p ** self.precision)
        if unit is None:
            return None
        return unit * Fraction(self.p) ** self.valuation

    def __add__(self, other) -> "PadicNumber":
        return add(self, _coerce(other, self.prime))

    def __radd__(self, other) -> "PadicNumber":
        return add(_coerce(other, self.prime), self)

    def __sub__(self, other) -> "PadicNumber":
        return sub(self, _coerce(other, self.prime))

    def __rsub__(self, other) -> "PadicNumber":
        return sub(_coerce(other, self.prime), self)

    def __mul__(self, other) -> "PadicNumber":
        return mul(self, _coerce(other, self.prime))

    def __rmul__(self, other) -> "PadicNumber":
        return mul(_coerce(other, self.prime), self)

    def __truediv__(self, other) -> "PadicNumber":
        return div(self, _coerce(other, self.prime))

    def __rtruediv__(self, other) -> "PadicNumber":
        return div(_coerce(other, self.prime), self)

    def __neg__(self) -> "PadicNumber":
        return neg(self)

    def __pow__(self, n: int) -> "PadicNumber":
        return pow_int(self, n)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"PadicNumber({compact(self)}, p={self.p})"


_EXACT_DIGITS = 12


def _coerce(value, prime: Prime) -> PadicNumber:
    if isinstance(value, PadicNumber):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return exact_rational(Fraction(value).numerator, Fraction(value).denominator, prime)
    raise TypeError(f"Cannot combine a p-adic number with {type(value).__name__}.")


def exact_zero(p: Union[int, Prime]) -> PadicNumber:
    return PadicNumber(as_prime(p), PLUS_INFINITY, 0, PLUS_INFINITY)


def zero_at(p: Union[int, Prime], absolute_precision: int) -> PadicNumber:
    """The value O(p^absolute_precision)."""
    return PadicNumber(as_prime(p), absolute_precision, 0, 0)


def _check_denominator(num: int, den: int) -> None:
    if den == 0:
        raise ZeroDenominatorError(num)


def exact_rational(num: int, den: int, p: Union[int, Prime]) -> PadicNumber:
    """num/den as an exact element of Q_p."""
    _check_denominator(num, den)
    prime = as_prime(p)
    value = Fraction(num, den)
    if value == 0:
        return exact_zero(prime)
    v_num, rest_num = _split(value.numerator, prime.p)
    v_den, rest_den = _split(value.denominator, prime.p)
    unit = Fraction(rest_num, rest_den)
    return PadicNumber(
        prime,
        v_num - v_den,
        unit.numerator if unit.denominator == 1 else unit,
        PLUS_INFINITY,
    )


def from_int(k: int, p: Union[int, Prime]) -> PadicNumber:
    return exact_rational(k, 1, p)


def from_rational(num: int, den: int, p: Union[int, Prime], precision: int) -> PadicNumber:
    """
    The canonical image of num/den in Q_p, known to `precision` digits past its valuation.

    :param int num: Numerator.
    :param int den: Denominator, nonzero.
    :param p: The prime.
    :param int precision: Relative precision N >= 1.
    :returns: A finite-precision p-adic number (an exact zero when num is 0).
    :rtype: PadicNumber
    """
    _check_denominator(num, den)
    if isinstance(precision, bool) or not isinstance(precision, int) or precision < 1:
        raise InvalidFieldValueError(
            field_name="precision",
            reason="Precision must be an integer of at least 1.",
            field_value=precision,
        )
    return with_precision(exact_rational(num, den, p), precision)


def embed_rational(value: Rational, p: Union[int, Prime], precision: int) -> PadicNumber:
    """Integers are embedded exactly, every other rational at `precision` digits."""
    value = Fraction(value)
    if value.denominator == 1:
        return from_int(value.numerator, p)
    return from_rational(value.numerator, value.denominator, p, precision)


def power_of_p(m: int, p: Union[int, Prime]) -> PadicNumber:
    """The exact value p^m."""
    prime = as_prime(p)
    return PadicNumber(prime, m, 1, PLUS_INFINITY)


def _normalize(prime: Prime, valuation: int, residue: int, precision: int) -> PadicNumber:
    if residue == 0:
        return zero_at(prime, valuation + precision)
    shift, unit = _split(residue, prime.p)
    return PadicNumber(prime, valuation + shift, unit, precision - shift)


def with_precision(x: PadicNumber, precision: int) -> PadicNumber:
    """Reduce x to at most `precision` digits of relative precision."""
    if x.unit == 0 or precision >= x.precision:
        return x
    return PadicNumber(x.prime, x.valuation, _mod_unit(x.unit, x.p, precision), precision)


def with_absolute_precision(x: PadicNumber, absolute_precision: int) -> PadicNumber:
    """Forget every digit at or beyond p^absolute_precision."""
    if x.absolute_precision <= absolute_precision:
        return x
    if x.unit == 0 or x.valuation >= absolute_precision:
        return zero_at(x.prime, absolute_precision)
    return with_precision(x, absolute_precision - x.valuation)


def _check_primes(x: PadicNumber, y: PadicNumber) -> None:
    if x.prime != y.prime:
        raise PrimeMismatchError(x.p, y.p)


def _residue(x: PadicNumber, valuation: int, absolute_precision: int) -> int:
    """x / p^valuation modulo p^(absolute_precision - valuation); x.valuation >= valuation."""
    if x.unit == 0:
        return 0
    digits = absolute_precision - valuation
    modulus = x.p ** digits
    return _mod_unit(x.unit, x.p, digits) * x.p ** (x.valuation - valuation) % modulus


def add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    _check_primes(x, y)
    if x.is_exact_zero:
        return y
    if y.is_exact_zero:
        return x
    if x.is_exact and y.is_exact:
        value = x.to_fraction() + y.to_fraction()
        return exact_rational(value.numerator, value.denominator, x.prime)
    absolute_precision = min(x.absolute_precision, y.absolute_precision)
    valuation = min(x.valuation, y.valuation)
    if absolute_precision <= valuation:
        return zero_at(x.prime, absolute_precision)
    digits = absolute_precision - valuation
    residue = (
        _residue(x, valuation, absolute_precision) + _residue(y, valuation, absolute_precision)
    ) % x.p ** digits
    return _normalize(x.prime, valuation, residue, digits)


def neg(x: PadicNumber) -> PadicNumber:
    if x.unit == 0:
        return x
    if x.is_exact:
        return PadicNumber(x.prime, x.valuation, -x.unit, x.precision)
    return PadicNumber(x.prime, x.valuation, (-x.unit) % x.p ** x.precision, x.precision)


def sub(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    return add(x, neg(y))


def mul(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    _check_primes(x, y)
    if x.is_exact_zero or y.is_exact_zero:
        return exact_zero(x.prime)
    if x.is_exact and y.is_exact:
        value = x.to_fraction() * y.to_fraction()
        return exact_rational(value.numerator, value.denominator, x.prime)
    if x.is_zero_at_precision and y.is_zero_at_precision:
        return zero_at(x.prime, x.valuation + y.valuation)
    if x.is_zero_at_precision or y.is_zero_at_precision:
        return zero_at(x.prime, x.valuation + y.valuation)
    precision = min(x.precision, y.precision)
    unit = _mod_unit(x.unit, x.p, precision) * _mod_unit(y.unit, x.p, precision)
    return PadicNumber(x.prime, x.valuation + y.valuation, unit % x.p ** precision, precision)


def div(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    _check_primes(x, y)
    if y.is_exact_zero:
        raise DivisionByZeroError()
    if y.is_zero_at_precision:
        raise PrecisionExhaustedError(
            f"Divisor is indistinguishable from zero: {render(y)}"
        )
    if x.is_exact_zero:
        return exact_zero(x.prime)
    if x.is_exact and y.is_exact:
        value = x.to_fraction() / y.to_fraction()
        return exact_rational(value.numerator, value.denominator, x.prime)
    if x.is_zero_at_precision:
        return zero_at(x.prime, x.valuation - y.valuation)
    precision = min(x.precision, y.precision)
    modulus = x.p ** precision
    unit = _mod_unit(x.unit, x.p, precision) * pow(_mod_unit(y.unit, x.p, precision), -1, modulus)
    return PadicNumber(x.prime, x.valuation - y.valuation, unit % modulus, precision)


def multiply_int(x: PadicNumber, k: int) -> PadicNumber:
    """x * k for an exact integer k."""
    return mul(x, from_int(k, x.prime))


def divide_int(x: PadicNumber, k: int) -> PadicNumber:
    """x / k for an exact integer k; the absolute precision drops by v_p(k)."""
    return div(x, from_int(k, x.prime))


def pow_int(x: PadicNumber, n: int) -> PadicNumber:
    if n < 0:
        return div(from_int(1, x.prime), pow_int(x, -n))
    result = from_int(1, x.prime)
    base = x
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def agrees_with(x: PadicNumber, y: PadicNumber) -> bool:
    """x and y are congruent modulo the smaller of their absolute precisions."""
    return sub(x, y).is_zero


def valuation(x: PadicNumber) -> Valuation:
    """v_p(x); PLUS_INFINITY for an exact zero."""
    if x.is_zero_at_precision:
        raise PrecisionExhaustedError(f"Valuation of {render(x)} is unknown")
    return x.valuation


def norm(x: PadicNumber) -> LogNorm:
    """|x|_p = p^{-v_p(x)} as an exact magnitude."""
    if x.is_exact_zero:
        return LogNorm.zero()
    return LogNorm(-valuation(x))


def norm_bound(x: PadicNumber) -> LogNorm:
    """An upper bound for |x|_p; exact unless x is zero at precision."""
    if x.is_zero_at_precision:
        return LogNorm(-x.valuation)
    return norm(x)


def sum_padic(values: Iterable[PadicNumber], p: Union[int, Prime]) -> PadicNumber:
    total = exact_zero(p)
    for value in values:
        total = add(total, value)
    return total


def _power_term(digit: int, p: int, power: int) -> str:
    if power == 0:
        return str(digit)
    if power == 1:
        return f"{digit}*{p}"
    return f"{digit}*{p}^{power}"


def render(x: PadicNumber) -> str:
    """`d0 + d1*p + d2*p^2 + ... + O(p^(v+N))`, with the prime written out."""
    if x.is_exact_zero:
        return "0"
    if x.is_zero_at_precision:
        return f"O({x.p}^{x.valuation})"
    if x.is_exact:
        return str(x.to_fraction())
    terms = [
        _power_term(digit, x.p, x.valuation + i)
        for i, digit in enumerate(x.unit_digits)
        if digit != 0
    ]
    terms.append(f"O({x.p}^{x.absolute_precision})")
    return " + ".join(terms)


def compact(x: PadicNumber, display_digits: int = _EXACT_DIGITS) -> str:
    """`val=v digits=[...] prec=N`."""
    if x.is_exact_zero:
        return "val=inf digits=[] prec=inf"
    if x.is_exact and isinstance(x.unit, int) and x.unit > 0:
        digits = list(_integer_digits(x.unit, x.p))
        return f"val={x.valuation} digits=[{','.join(map(str, digits))}] prec=inf"
    if x.is_exact:
        x = with_precision(x, display_digits)
    digits = ",".join(str(digit) for digit in x.unit_digits)
    return f"val={x.valuation} digits=[{digits}] prec={x.precision}"


def _integer_digits(n: int, p: int) -> Tuple[int, ...]:
    digits = []
    while n:
        n, digit = divmod(n, p)
        digits.append(digit)
    return tuple(digits)


def parse_padic(text: str, p: Union[int, Prime], precision: int) -> PadicNumber:
    """
    Parse a rational literal (`a/b`, integers) or the compact form.

    Rationals go through `embed_rational`; the compact form is taken at face value.
    """
    prime = as_prime(p)
    match = re.match(RegexPatterns.COMPACT_PADIC.value, text)
    if match is None:
        return embed_rational(parse_rational(text), prime, precision)
    raw_valuation, raw_digits, raw_precision = match.groups()
    digits = [int(d) for d in raw_digits.replace(" ", "").split(",") if d != ""]
    if any(d >= prime.p for d in digits):
        raise InputParseError(f"Digits must lie in [0, {prime.p})", source=text)
    if raw_valuation == "inf":
        if digits:
            raise InputParseError("An infinite valuation needs empty digits", source=text)
        return exact_zero(prime)
    unit = sum(d * prime.p ** i for i, d in enumerate(digits))
    if raw_precision == "inf":
        if unit == 0:
            raise InputParseError("An exact value needs nonzero digits", source=text)
        shift, rest = _split(unit, prime.p)
        return PadicNumber(prime, int(raw_valuation) + shift, rest, PLUS_INFINITY)
    relative = int(raw_precision)
    if len(digits) > relative:
        raise InputParseError("More digits than the stated precision", source=text)
    if unit == 0:
        return zero_at(prime, int(raw_valuation) + relative)
    if digits[0] == 0:
        raise InputParseError("The leading unit digit must be nonzero", source=text)
    return PadicNumber(prime, int(raw_valuation), unit, relative)
