"""
Truncated multivariate power series over Q_p with the rho-weighted sup norm.

A function f = sum_alpha f_alpha x^alpha is stored through its coefficients of total
degree at most D. Whatever an operation pushes beyond degree D is not dropped silently:
its rho-norm is bounded and kept as `truncation_norm`, so every norm computed here is a
certified value.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .enums import RegexPatterns
from .errors import (
    InputParseError,
    InvalidFieldValueError,
    PrecisionExhaustedError,
    SpaceMismatchError,
)
from .padic_arith import (
    LogNorm,
    PadicNumber,
    Prime,
    Rational,
    agrees_with,
    as_prime,
    compact,
    divide_int,
    embed_rational,
    exact_zero,
    from_int,
    multiply_int,
    norm,
    norm_bound,
    with_absolute_precision,
)
from .spaces import precision_floor
from .util import parse_rational

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]


def graded_lex_key(alpha: MultiIndex) -> Tuple[int, MultiIndex]:
    return sum(alpha), alpha


@dataclass(frozen=True)
class AnalyticSpace:
    """The space A_rho in n variables over Q_p, truncated at total degree D."""

    prime: Prime
    variables: int
    rho_exponent: Fraction
    truncation_degree: int = 16

    def __post_init__(self) -> None:
        object.__setattr__(self, "prime", as_prime(self.prime))
        object.__setattr__(self, "rho_exponent", Fraction(self.rho_exponent))
        if self.variables < 1:
            raise InvalidFieldValueError(
                field_name="variables",
                reason="At least one variable is required.",
                field_value=self.variables,
            )
        if self.truncation_degree < 0:
            raise InvalidFieldValueError(
                field_name="truncation_degree",
                reason="Truncation degree must be nonnegative.",
                field_value=self.truncation_degree,
            )

    def weight(self, alpha: MultiIndex) -> LogNorm:
        """rho^{|alpha|}."""
        return LogNorm(sum(alpha) * self.rho_exponent)

    def zero(self) -> "AnalyticFunction":
        return self.function(dict())

    def function(
        self, coefficients: Dict[MultiIndex, PadicNumber], truncation_norm: Optional[LogNorm] = None
    ) -> "AnalyticFunction":
        return AnalyticFunction(
            prime=self.prime,
            variables=self.variables,
            rho_exponent=self.rho_exponent,
            coefficients=coefficients,
            truncation_degree=self.truncation_degree,
            truncation_norm=truncation_norm or LogNorm.zero(),
        )

    def constant(self, c: PadicNumber) -> "AnalyticFunction":
        return self.monomial((0,) * self.variables, c)

    def monomial(self, alpha: MultiIndex, c: PadicNumber) -> "AnalyticFunction":
        return self.function({tuple(alpha): c})

    def variable(self, j: int) -> "AnalyticFunction":
        """x_j, with 1-based j."""
        _check_variable(j, self.variables)
        alpha = tuple(1 if i == j - 1 else 0 for i in range(self.variables))
        return self.monomial(alpha, from_int(1, self.prime))

    def from_rationals(
        self, coefficients: Dict[MultiIndex, Rational], precision: int
    ) -> "AnalyticFunction":
        return self.function(
            {
                tuple(alpha): embed_rational(value, self.prime, precision)
                for alpha, value in coefficients.items()
            }
        )


@dataclass(frozen=True)
class AnalyticFunction:
    prime: Prime
    variables: int
    rho_exponent: Fraction
    coefficients: Dict[MultiIndex, PadicNumber] = field(hash=False)
    truncation_degree: int = 16
    truncation_norm: LogNorm = LogNorm.zero()
    """
    Certified bound on the rho-norm of everything not held in `coefficients`. Truncation
    discards degrees above D; each derivative taken afterwards lowers that by one, so after
    k derivatives the bound may cover terms of degree D - k + 1 and up.
    """

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho_exponent", Fraction(self.rho_exponent))
        kept = dict()
        for alpha, c in self.coefficients.items():
            alpha = tuple(alpha)
            if len(alpha) != self.variables or any(a < 0 for a in alpha):
                raise InvalidFieldValueError(
                    field_name="coefficients",
                    reason=f"Multi-indices need {self.variables} nonnegative entries.",
                    field_value=alpha,
                )
            if sum(alpha) > self.truncation_degree:
                raise InvalidFieldValueError(
                    field_name="coefficients",
                    reason=f"Degree exceeds the truncation degree {self.truncation_degree}.",
                    field_value=alpha,
                )
            if c.prime != self.prime:
                raise SpaceMismatchError(f"Coefficient over p={c.p} in a {self.prime.p}-adic space")
            if not c.is_exact_zero:
                kept[alpha] = c
        object.__setattr__(self, "coefficients", kept)

    @property
    def space(self) -> AnalyticSpace:
        return AnalyticSpace(self.prime, self.variables, self.rho_exponent, self.truncation_degree)

    @property
    def is_exact_zero(self) -> bool:
        return not self.coefficients and self.truncation_norm.is_zero

    @property
    def is_polynomial(self) -> bool:
        """No discarded tail."""
        return self.truncation_norm.is_zero

    def coefficient(self, alpha: MultiIndex) -> PadicNumber:
        return self.coefficients.get(tuple(alpha), exact_zero(self.prime))

    def sorted_terms(self) -> List[Tuple[MultiIndex, PadicNumber]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.coefficients.items(), key=lambda t: graded_lex_key(t[0]), reverse=True)

    def __add__(self, other: "AnalyticFunction") -> "AnalyticFunction":
        return add(self, other)

    def __sub__(self, other: "AnalyticFunction") -> "AnalyticFunction":
        return sub(self, other)

    def __neg__(self) -> "AnalyticFunction":
        return negate(self)

    def __mul__(self, other: "AnalyticFunction") -> "AnalyticFunction":
        return multiply(self, other)

    def scale(self, factor: PadicNumber) -> "AnalyticFunction":
        return scale(self, factor)

    def multiply_int(self, k: int) -> "AnalyticFunction":
        factor = from_int(k, self.prime)
        return self._map(lambda c: multiply_int(c, k), self.truncation_norm * norm(factor))

    def divide_int(self, k: int) -> "AnalyticFunction":
        factor = from_int(k, self.prime)
        truncation = self.truncation_norm
        if not truncation.is_zero:
            truncation = truncation / norm(factor)
        return self._map(lambda c: divide_int(c, k), truncation)

    def norm(self) -> LogNorm:
        return rho_norm(self)

    def norm_bound(self) -> LogNorm:
        return rho_norm_bound(self)

    def precision_floor(self) -> LogNorm:
        return precision_floor(self.coefficients.values())

    def with_absolute_precision(self, absolute_precision: int) -> "AnalyticFunction":
        return self._map(lambda c: with_absolute_precision(c, absolute_precision))

    def agrees_with(self, other: "AnalyticFunction") -> bool:
        _check_space(self, other)
        keys = set(self.coefficients) | set(other.coefficients)
        return all(agrees_with(self.coefficient(alpha), other.coefficient(alpha)) for alpha in keys)

    def _map(self, transform, truncation_norm: Optional[LogNorm] = None) -> "AnalyticFunction":
        return AnalyticFunction(
            prime=self.prime,
            variables=self.variables,
            rho_exponent=self.rho_exponent,
            coefficients={alpha: transform(c) for alpha, c in self.coefficients.items()},
            truncation_degree=self.truncation_degree,
            truncation_norm=self.truncation_norm if truncation_norm is None else truncation_norm,
        )

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)


def _check_variable(j: int, variables: int) -> None:
    if not 1 <= j <= variables:
        raise InvalidFieldValueError(
            field_name="j", reason=f"Variable index must lie in 1..{variables}.", field_value=j
        )


def _check_space(f: AnalyticFunction, g: AnalyticFunction) -> None:
    if f.prime != g.prime:
        raise SpaceMismatchError(f"Primes differ: {f.prime.p} and {g.prime.p}")
    if f.variables != g.variables:
        raise SpaceMismatchError(f"Variable counts differ: {f.variables} and {g.variables}")
    if f.rho_exponent != g.rho_exponent:
        raise SpaceMismatchError(f"rho exponents differ: {f.rho_exponent} and {g.rho_exponent}")
    if f.truncation_degree != g.truncation_degree:
        raise SpaceMismatchError(
            f"Truncation degrees differ: {f.truncation_degree} and {g.truncation_degree}"
        )


def _weight(f: AnalyticFunction, alpha: MultiIndex) -> LogNorm:
    return LogNorm(sum(alpha) * f.rho_exponent)


def rho_norm(f: AnalyticFunction) -> LogNorm:
    """
    max_alpha |f_alpha|_p rho^{|alpha|}, combined with the truncation norm.

    :param AnalyticFunction f: The function.
    :returns: The exact rho-norm.
    :rtype: LogNorm
    """
    known = [f.truncation_norm]
    unknown = []
    for alpha, c in f.coefficients.items():
        if c.is_zero_at_precision:
            unknown.append(norm_bound(c) * _weight(f, alpha))
        else:
            known.append(norm(c) * _weight(f, alpha))
    largest = max(known)
    if unknown and max(unknown) > largest:
        raise PrecisionExhaustedError(f"rho-norm of {render(f)} is undetermined")
    return largest


def rho_norm_bound(f: AnalyticFunction) -> LogNorm:
    """An upper bound for the rho-norm that never raises."""
    bounds = [norm_bound(c) * _weight(f, alpha) for alpha, c in f.coefficients.items()]
    return max(bounds + [f.truncation_norm])


def norm_witness(f: AnalyticFunction) -> Optional[MultiIndex]:
    """The graded-lex first stored multi-index attaining the rho-norm, if a stored term does."""
    target = rho_norm(f)
    if target.is_zero:
        return None
    for alpha, c in sorted(f.coefficients.items(), key=lambda t: graded_lex_key(t[0])):
        if not c.is_zero_at_precision and norm(c) * _weight(f, alpha) == target:
            return alpha
    return None


def degree(f: AnalyticFunction) -> int:
    """Largest stored total degree; 0 for the zero function."""
    return max((sum(alpha) for alpha in f.coefficients), default=0)


def add(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    _check_space(f, g)
    coefficients = dict(f.coefficients)
    for alpha, c in g.coefficients.items():
        coefficients[alpha] = coefficients[alpha] + c if alpha in coefficients else c
    return f.space.function(coefficients, max(f.truncation_norm, g.truncation_norm))


def negate(f: AnalyticFunction) -> AnalyticFunction:
    return f._map(lambda c: -c)


def sub(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    return add(f, negate(g))


def scale(f: AnalyticFunction, factor: PadicNumber) -> AnalyticFunction:
    truncation = f.truncation_norm
    if not truncation.is_zero:
        truncation = truncation * norm_bound(factor)
    return f._map(lambda c: factor * c, truncation)


def partial_derivative(f: AnalyticFunction, j: int) -> AnalyticFunction:
    """
    d f / d x_j, 1-based j.

    The coefficient at alpha is (alpha_j + 1) f_{alpha + e_j}; the truncation norm is
    multiplied by rho^{-1}, the derivative bound applied to the discarded tail. Discarded
    terms of degree D + 1 land in degree D and stay in the truncation norm, since their
    coefficients are unknown.
    """
    _check_variable(j, f.variables)
    index = j - 1
    coefficients = dict()
    for alpha, c in f.coefficients.items():
        if alpha[index] == 0:
            continue
        lowered = alpha[:index] + (alpha[index] - 1,) + alpha[index + 1 :]
        coefficients[lowered] = multiply_int(c, alpha[index])
    truncation = f.truncation_norm
    if not truncation.is_zero:
        truncation = LogNorm(truncation.exponent - f.rho_exponent)
    return f.space.function(coefficients, truncation)


def derivative(f: AnalyticFunction, beta: MultiIndex) -> AnalyticFunction:
    """D^beta f."""
    result = f
    for j, order in enumerate(beta, start=1):
        for _ in range(order):
            result = partial_derivative(result, j)
    return result


def multiply(f: AnalyticFunction, g: AnalyticFunction) -> AnalyticFunction:
    """
    The convolution c_alpha = sum f_i g_{alpha - i} up to degree D.

    Products of degree above D go into the truncation norm together with the cross terms
    of each factor's own tail, bounded by submultiplicativity.
    """
    _check_space(f, g)
    coefficients: Dict[MultiIndex, PadicNumber] = dict()
    dropped = LogNorm.zero()
    for alpha, a in f.coefficients.items():
        for beta, b in g.coefficients.items():
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            product = a * b
            if sum(gamma) > f.truncation_degree:
                dropped = max(dropped, norm_bound(product) * _weight(f, gamma))
                continue
            if gamma in coefficients:
                product = coefficients[gamma] + product
            coefficients[gamma] = product
    truncation = dropped
    if not f.truncation_norm.is_zero:
        truncation = max(truncation, f.truncation_norm * rho_norm_bound(g))
    if not g.truncation_norm.is_zero:
        truncation = max(truncation, rho_norm_bound(f) * g.truncation_norm)
    if not dropped.is_zero:
        logger.debug(
            "multiply folded terms above degree %d into p^(%s)", f.truncation_degree, dropped
        )
    return f.space.function(coefficients, truncation)


def to_rational_dict(f: AnalyticFunction) -> Dict[MultiIndex, Fraction]:
    """Coefficients as rationals, via rational reconstruction for inexact values."""
    result = dict()
    for alpha, c in f.coefficients.items():
        value = c.to_rational()
        if value is None:
            raise PrecisionExhaustedError(f"No small rational matches {compact(c)}")
        if value != 0:
            result[alpha] = value
    return result


def _render_coefficient(c: PadicNumber) -> str:
    value = c.to_rational()
    return str(value) if value is not None else f"[{compact(c)}]"


def _render_monomial(alpha: MultiIndex) -> str:
    factors = []
    for j, power in enumerate(alpha, start=1):
        if power == 1:
            factors.append(f"x{j}")
        elif power > 1:
            factors.append(f"x{j}^{power}")
    return "*".join(factors)


def render(f: AnalyticFunction) -> str:
    """Graded-lex descending terms with rational coefficients, e.g. `3/5*x1^2*x2 + 7`."""
    pieces = []
    for alpha, c in f.sorted_terms():
        if c.is_zero_at_precision:
            pieces.append(("+", f"O({c.p}^{c.valuation})*{_render_monomial(alpha) or '1'}"))
            continue
        coefficient = _render_coefficient(c)
        sign = "+"
        if coefficient.startswith("-"):
            sign, coefficient = "-", coefficient[1:]
        monomial = _render_monomial(alpha)
        if not monomial:
            body = coefficient
        elif coefficient == "1":
            body = monomial
        else:
            body = f"{coefficient}*{monomial}"
        pieces.append((sign, body))
    if not f.truncation_norm.is_zero:
        pieces.append(("+", f"[tail <= {f.truncation_norm.render(f.prime)}]"))
    if not pieces:
        return "0"
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def parse_polynomial(text: str, space: AnalyticSpace, precision: int) -> AnalyticFunction:
    """
    Parse a polynomial such as `3/5*x1^2*x2 - x2 + 7` into the given space.

    Rational coefficients are embedded with `embed_rational` (integers exactly).
    """
    body = re.sub(r"\s+", "", str(text))
    if body == "":
        raise InputParseError("Empty polynomial", source=text)
    terms: Dict[MultiIndex, Fraction] = dict()
    consumed = 0
    for match in re.finditer(RegexPatterns.SIGNED_TERM.value, body):
        if match.start() != consumed:
            raise InputParseError("Unexpected characters in polynomial", source=text)
        consumed = match.end()
        sign, term = match.groups()
        coefficient = Fraction(-1 if sign == "-" else 1)
        alpha = [0] * space.variables
        for factor in term.split("*"):
            if re.match(RegexPatterns.RATIONAL_FACTOR.value, factor):
                coefficient *= parse_rational(factor)
                continue
            power = re.match(RegexPatterns.VARIABLE_POWER.value, factor)
            if power is None:
                raise InputParseError(f"Unrecognised factor {factor!r}", source=text)
            j = int(power.group(1))
            if not 1 <= j <= space.variables:
                raise InputParseError(
                    f"Variable x{j} outside x1..x{space.variables}", source=text
                )
            alpha[j - 1] += int(power.group(2)) if power.group(2) is not None else 1
        key = tuple(alpha)
        if sum(key) > space.truncation_degree:
            raise InputParseError(
                f"Term of degree {sum(key)} exceeds truncation degree {space.truncation_degree}",
                source=text,
            )
        terms[key] = terms.get(key, Fraction(0)) + coefficient
    if consumed != len(body):
        raise InputParseError("Unexpected characters in polynomial", source=text)
    return space.from_rationals({alpha: c for alpha, c in terms.items() if c != 0}, precision)
