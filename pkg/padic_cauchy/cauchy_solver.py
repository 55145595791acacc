"""
The Cauchy problem y' = Ay, y(0) = y0, solved by the series y(z) = sum_k (A^k y0 / k!) z^k.

The coefficients follow the recurrence c_0 = y0, c_k = A c_{k-1} / k. The radius of
convergence obeys sigma(y0; A) * r = p^{-1/(p-1)}, and truncation errors are bounded in
closed form from a certified growth model ||A^k y0|| <= c * alpha^k together with
1 / |k!|_p <= p^{k/(p-1)}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .enums import GrowthSource
from .errors import (
    InsufficientDepthError,
    OutsideDiskError,
    PrecisionExhaustedError,
    PrimeMismatchError,
)
from .exp_type import NormSequence, TypeEstimate, default_window, type_of
from .operators import MatrixOperator, OperatorSpec, apply, operator_norm_bound, power_apply
from .padic_arith import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    Exponent,
    LogNorm,
    PadicNumber,
    Prime,
    Rational,
    as_prime,
    norm_bound,
    power_of_p,
    render,
    vp_factorial,
)
from .spaces import Disk, Vector, disk_contains
from .util import ceil_exponent, is_epsilon_valid, is_terms_valid, radius_law_exponent, to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrowthModel:
    """A certified bound ||A^k y0|| <= constant * alpha^k."""

    constant: LogNorm
    alpha: LogNorm
    source: GrowthSource


@dataclass(frozen=True)
class SeriesSolution:
    operator: OperatorSpec
    initial: object
    coefficients: Tuple[object, ...]
    """c_0 ... c_K with c_k = A^k y0 / k!."""
    depth: int
    sigma: TypeEstimate
    radius: LogNorm
    alpha_cert: GrowthModel
    norms: NormSequence
    """Exponents of ||A^k y0||, recovered as ||c_k|| * |k!|_p."""

    @property
    def prime(self) -> Prime:
        return self.initial.prime

    @property
    def disk(self) -> Disk:
        return Disk.open(self.radius)


@dataclass(frozen=True)
class TailBound:
    at_point: PadicNumber
    depth: int
    bound: LogNorm


class Evaluation(NamedTuple):
    value: object
    tail: TailBound


def working_precision(precision: int, depth: int, p) -> int:
    """N + v_p(K!), so that c_K keeps N digits after K divisions."""
    return precision + vp_factorial(depth, p)


def radius_from_sigma(sigma: LogNorm, p) -> LogNorm:
    """r = p^{-1/(p-1)} / sigma, unbounded for sigma = 0."""
    if sigma.is_zero:
        return LogNorm.unbounded()
    return LogNorm(radius_law_exponent(int(p)) - sigma.exponent)


def _coefficient_norm(c, k: int) -> Exponent:
    if c.is_exact_zero:
        return MINUS_INFINITY
    try:
        return c.norm().exponent
    except PrecisionExhaustedError as error:
        raise PrecisionExhaustedError(error.message, depth=k) from error


def certify_growth(A: OperatorSpec, seq: NormSequence) -> GrowthModel:
    """
    Pick the certified model with the smaller alpha: the observed one
    (alpha = ceil(max e_k / k), c = max(e_k - k * alpha)) or the operator-norm one
    (alpha = ||A||, c = ||y0||). The operator-norm model wins ties.
    """
    finite = [(k, e) for k, e in enumerate(seq.exponents) if e != MINUS_INFINITY]
    if not finite:
        return GrowthModel(LogNorm.zero(), LogNorm.one(), GrowthSource.EVENTUALLY_ZERO)
    rates = [Fraction(e) / k for k, e in finite if k >= 1]
    observed_alpha = ceil_exponent(max(rates)) if rates else 0
    observed_constant = max(e - k * observed_alpha for k, e in finite)
    if seq.eventually_zero:
        return GrowthModel(
            LogNorm(observed_constant), LogNorm(observed_alpha), GrowthSource.EVENTUALLY_ZERO
        )
    ceiling = operator_norm_bound(A)
    if ceiling <= LogNorm(observed_alpha):
        return GrowthModel(LogNorm(seq.exponents[0]), ceiling, GrowthSource.OPERATOR_NORM)
    return GrowthModel(
        LogNorm(observed_constant), LogNorm(observed_alpha), GrowthSource.OBSERVED
    )


def build_solution(
    A: OperatorSpec, y0, depth: int, window: Optional[int] = None
) -> SeriesSolution:
    """
    Build c_0 ... c_K, the type of y0, the radius and the certified growth model.

    :param A: A MatrixOperator or a DifferentialOperator.
    :param y0: A Vector or an AnalyticFunction in the operator's space.
    :param int depth: K >= 4.
    :param window: The limsup window, default K // 4.
    :raises PrecisionExhaustedError: with the depth at which a coefficient norm was lost.
    """
    is_terms_valid({"terms": depth})
    window = default_window(depth) if window is None else window
    coefficients = [y0]
    for k in range(1, depth + 1):
        coefficients.append(apply(A, coefficients[-1]).divide_int(k))
    p = y0.prime.p
    exponents = []
    for k, c in enumerate(coefficients):
        e = _coefficient_norm(c, k)
        exponents.append(e if e == MINUS_INFINITY else e - vp_factorial(k, p))
    seq = NormSequence.from_exponents(exponents)
    if seq.eventually_zero:
        logger.debug("series terminates: A^k y0 vanishes exactly within depth %d", depth)
    sigma = type_of(A, y0, depth, window, sequence=seq)
    radius = radius_from_sigma(sigma.sigma, p)
    model = certify_growth(A, seq)
    logger.debug(
        "built series to depth %d: sigma=%s radius=%s model=%s",
        depth,
        sigma.sigma,
        radius,
        model.source.value,
    )
    return SeriesSolution(
        operator=A,
        initial=y0,
        coefficients=tuple(coefficients),
        depth=depth,
        sigma=sigma,
        radius=radius,
        alpha_cert=model,
        norms=seq,
    )


def solve_rational_ode(
    rows: Sequence[Sequence[Rational]],
    y0: Sequence[Rational],
    p,
    precision: int,
    depth: int,
    window: Optional[int] = None,
) -> SeriesSolution:
    """Embed rational data at the working precision N + v_p(K!) and build the solution."""
    prime = as_prime(p)
    digits = working_precision(precision, depth, prime)
    logger.debug("working precision %d for N=%d, K=%d", digits, precision, depth)
    A = MatrixOperator.from_rationals(rows, prime, digits)
    return build_solution(A, Vector.from_rationals(y0, prime, digits), depth, window)


def radius_from_coefficients(coefficients: Sequence, window: Optional[int] = None) -> LogNorm:
    """
    1 / limsup ||c_n||^{1/n}, the limsup read over the trailing window.

    A sequence that vanishes from some index on has an unbounded radius.
    """
    depth = len(coefficients) - 1
    if depth < 4:
        raise InsufficientDepthError(depth, 4)
    window = default_window(depth) if window is None else window
    exponents = [_coefficient_norm(c, k) for k, c in enumerate(coefficients)]
    first_zero = next(
        (k for k, e in enumerate(exponents) if k >= 1 and e == MINUS_INFINITY), None
    )
    if first_zero is not None and all(e == MINUS_INFINITY for e in exponents[first_zero:]):
        return LogNorm.unbounded()
    rates = [
        Fraction(exponents[k]) / k
        for k in range(max(1, depth - window + 1), depth + 1)
        if exponents[k] != MINUS_INFINITY
    ]
    if not rates:
        return LogNorm.unbounded()
    return LogNorm(-max(rates))


def _check_point(sol: SeriesSolution, z: PadicNumber) -> None:
    if z.prime != sol.prime:
        raise PrimeMismatchError(sol.prime.p, z.p)
    if not disk_contains(sol.disk, z):
        raise OutsideDiskError(render(z), sol.radius.render(sol.prime))


def _horner(coefficients: Sequence, z: PadicNumber):
    result = coefficients[-1]
    for c in reversed(coefficients[:-1]):
        result = result.scale(z) + c
    return result


def partial_sum(sol: SeriesSolution, z: PadicNumber, depth: Optional[int] = None):
    """sum_{k <= depth} c_k z^k, without any precision cap."""
    depth = sol.depth if depth is None else depth
    if depth > sol.depth:
        raise InsufficientDepthError(sol.depth, depth)
    return _horner(sol.coefficients[: depth + 1], z)


def _first_vanishing(seq: NormSequence) -> Optional[int]:
    return next((k for k, e in enumerate(seq.exponents) if e == MINUS_INFINITY), None)


def tail_bound(
    sol: SeriesSolution,
    z: PadicNumber,
    depth: Optional[int] = None,
    model: Optional[GrowthModel] = None,
) -> TailBound:
    """
    Bound ||sum_{k > depth} c_k z^k|| by max_{k > depth} c * (alpha |z| p^{1/(p-1)})^k.

    The exponent is affine in k, so the bound is finite exactly when
    alpha + |z| + 1/(p-1) < 0 in exponent space and is then reached at k = depth + 1.
    """
    depth = sol.depth if depth is None else depth
    if model is None:
        model = sol.alpha_cert
        vanishing = _first_vanishing(sol.norms)
        if vanishing is not None and vanishing <= depth + 1:
            return TailBound(z, depth, LogNorm.zero())
    if z.is_exact_zero or model.constant.is_zero:
        return TailBound(z, depth, LogNorm.zero())
    p = sol.prime.p
    slope = model.alpha.exponent + norm_bound(z).exponent - radius_law_exponent(p)
    if slope >= 0:
        return TailBound(z, depth, LogNorm.unbounded())
    return TailBound(z, depth, LogNorm(model.constant.exponent + (depth + 1) * slope))


def evaluate(sol: SeriesSolution, z: PadicNumber) -> Evaluation:
    """
    The partial sum at z with its certified tail.

    A finite tail p^t caps the value at absolute precision ceil(-t); an unbounded tail
    (z inside the radius but outside the certified disk) leaves it uncapped.
    """
    _check_point(sol, z)
    value = partial_sum(sol, z)
    tail = tail_bound(sol, z)
    if tail.bound.is_finite:
        value = value.with_absolute_precision(ceil_exponent(-tail.bound.exponent))
    return Evaluation(value, tail)


def _falling(n: int, order: int) -> int:
    product = 1
    for i in range(n + 1, n + order + 1):
        product *= i
    return product


def derivative_coefficients(sol: SeriesSolution, order: int = 1) -> List:
    """(n+1)...(n+order) c_{n+order} for n = 0 ... K - order."""
    return [
        sol.coefficients[n + order].multiply_int(_falling(n, order))
        for n in range(sol.depth - order + 1)
    ]


def evaluate_derivative(sol: SeriesSolution, z: PadicNumber, order: int = 1):
    """The truncated derivative series y^(order)(z)."""
    _check_point(sol, z)
    if order > sol.depth:
        raise InsufficientDepthError(sol.depth, order)
    return _horner(derivative_coefficients(sol, order), z)


@dataclass(frozen=True)
class OriginDerivative:
    order: int
    value: object
    expected: object
    agrees: bool


def derivative_at_origin(sol: SeriesSolution, order: int) -> OriginDerivative:
    """y^(k)(0) = k! c_k, compared with A^k y0."""
    if order > sol.depth:
        raise InsufficientDepthError(sol.depth, order)
    value = derivative_coefficients(sol, order)[0]
    expected = power_apply(sol.operator, sol.initial, order)
    return OriginDerivative(order, value, expected, value.agrees_with(expected))


def residual(sol: SeriesSolution, z: PadicNumber) -> LogNorm:
    """||y'(z) - A y(z)|| from the two truncated series (an upper bound when inexact)."""
    _check_point(sol, z)
    return _residual_vector(sol, z).norm_bound()


def _residual_vector(sol: SeriesSolution, z: PadicNumber):
    derivative_value = _horner(derivative_coefficients(sol, 1), z)
    return derivative_value - apply(sol.operator, partial_sum(sol, z))


@dataclass(frozen=True)
class ResidualCheck:
    at_point: PadicNumber
    residual: LogNorm
    bound: LogNorm
    """max(tail / |z|, tail * ||A||)."""
    floor: LogNorm
    """p^{-a} for the absolute precision a of the computed difference."""
    holds: bool


def combined_tail(sol: SeriesSolution, z: PadicNumber) -> LogNorm:
    tail = tail_bound(sol, z).bound
    if tail.is_zero or tail.is_unbounded:
        return tail
    candidates = [tail / norm_bound(z)]
    operator_norm = operator_norm_bound(sol.operator)
    if not operator_norm.is_zero:
        candidates.append(tail * operator_norm)
    return max(candidates)


def residual_check(sol: SeriesSolution, z: PadicNumber) -> ResidualCheck:
    _check_point(sol, z)
    difference = _residual_vector(sol, z)
    value = difference.norm_bound()
    bound = combined_tail(sol, z)
    floor = difference.precision_floor()
    return ResidualCheck(z, value, bound, floor, value <= max(bound, floor))


@dataclass(frozen=True)
class TailSoundness:
    at_point: PadicNumber
    depth: int
    extra: int
    difference: LogNorm
    bound: LogNorm
    floor: LogNorm
    holds: bool


def tail_soundness(
    sol: SeriesSolution, z: PadicNumber, depth: int, extra: int = 10
) -> TailSoundness:
    """Check ||y_{depth+extra}(z) - y_depth(z)|| <= TailBound(depth) on a deeper solution."""
    _check_point(sol, z)
    if depth + extra > sol.depth:
        raise InsufficientDepthError(sol.depth, depth + extra)
    difference = partial_sum(sol, z, depth + extra) - partial_sum(sol, z, depth)
    value = difference.norm_bound()
    bound = tail_bound(sol, z, depth).bound
    floor = difference.precision_floor()
    return TailSoundness(z, depth, extra, value, bound, floor, value <= max(bound, floor))


def is_entire(sol: SeriesSolution) -> bool:
    """Convergent on all of Q_p; certified when A^k y0 vanishes exactly."""
    return sol.radius.is_unbounded


def power_at_most(p: int, exponent: Fraction, bound: Fraction) -> bool:
    """Exact test of p^exponent <= bound for a rational exponent u/b: p^u <= bound^b."""
    exponent = Fraction(exponent)
    return Fraction(p) ** exponent.numerator <= Fraction(bound) ** exponent.denominator


@dataclass(frozen=True)
class WellposednessRow:
    perturbation: int
    shell: int
    """The sample point is z = p^shell."""
    lhs: LogNorm
    """max of ||y_n(z) - y(z)|| over the computed terms and the tail of the difference."""
    rhs: LogNorm
    """||y_{n,0} - y0||_alpha; the estimate compares lhs with rhs / epsilon."""
    holds: bool

    @property
    def margin(self) -> Exponent:
        """rhs - lhs in exponent space, +inf when lhs vanishes."""
        return PLUS_INFINITY if self.lhs.is_zero else self.rhs.exponent - self.lhs.exponent


@dataclass(frozen=True)
class WellposednessReport:
    alpha: LogNorm
    delta: LogNorm
    epsilon: Fraction
    shells: Tuple[int, ...]
    rows: Tuple[WellposednessRow, ...]
    radius_ok: Tuple[bool, ...]
    """r(y_n) >= delta for each perturbation."""
    worst_margin: Exponent
    """min over rows of rhs - lhs in exponent space (+inf when every lhs vanishes)."""

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows) and all(self.radius_ok)


def first_shell(p: int, delta: LogNorm, epsilon: Fraction) -> int:
    """The least m with p^{-m} <= (1 - epsilon) * delta."""
    m = ceil_exponent(-delta.exponent)
    while not power_at_most(p, -m - delta.exponent, 1 - epsilon):
        m += 1
    return m


def _estimate_holds(p: int, lhs: LogNorm, rhs: LogNorm, epsilon: Fraction) -> bool:
    if lhs.is_zero:
        return True
    if rhs.is_zero or lhs.is_unbounded:
        return False
    return power_at_most(p, lhs.exponent - rhs.exponent, 1 / epsilon)


def wellposedness_check(
    A: OperatorSpec,
    y0,
    perturbations: Sequence,
    epsilon,
    depth: int,
    shells: int = 4,
    window: Optional[int] = None,
) -> WellposednessReport:
    """
    Check ||y_n(z) - y(z)|| <= epsilon^{-1} ||y_{n,0} - y0||_alpha on |z| <= (1 - epsilon) delta.

    With alpha = ||A|| every vector lies in E_alpha and its alpha-norm is its norm, and
    delta = p^{-1/(p-1)} / alpha. One exact point p^m is sampled per norm shell, starting
    from the largest shell inside the disk.
    """
    is_epsilon_valid({"epsilon": epsilon})
    epsilon = to_fraction(epsilon)
    p = y0.prime.p
    alpha = operator_norm_bound(A)
    if alpha.is_zero:
        alpha = LogNorm.one()
    delta = LogNorm(radius_law_exponent(p) - alpha.exponent)
    start = first_shell(p, delta, epsilon)
    sampled = tuple(range(start, start + shells))
    base = build_solution(A, y0, depth, window)
    rows: List[WellposednessRow] = []
    radius_ok: List[bool] = []
    for index, perturbed in enumerate(perturbations):
        solution = build_solution(A, perturbed, depth, window)
        radius_ok.append(solution.radius >= delta)
        initial_difference = perturbed - y0
        rhs = initial_difference.norm()
        model = GrowthModel(rhs, alpha, GrowthSource.OPERATOR_NORM)
        for m in sampled:
            z = power_of_p(m, p)
            difference = partial_sum(solution, z) - partial_sum(base, z)
            tail = tail_bound(base, z, model=model).bound
            lhs = max(difference.norm_bound(), tail)
            rows.append(
                WellposednessRow(index, m, lhs, rhs, _estimate_holds(p, lhs, rhs, epsilon))
            )
    margins = [row.margin for row in rows]
    report = WellposednessReport(
        alpha=alpha,
        delta=delta,
        epsilon=epsilon,
        shells=sampled,
        rows=tuple(rows),
        radius_ok=tuple(radius_ok),
        worst_margin=min(margins, default=PLUS_INFINITY),
    )
    logger.debug(
        "well-posedness: %d rows over shells %s, holds=%s", len(rows), sampled, report.holds
    )
    return report
