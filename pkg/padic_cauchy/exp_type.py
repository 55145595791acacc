"""
Norm sequences ||A^k x||, the type sigma(x; A), and the spaces E_alpha(A).

Every magnitude is a LogNorm, so p^{e_k} = ||A^k x|| and the type is a limsup of e_k / k.
The limsup is estimated over a trailing window; diagonal and triangular matrices, and
sequences that reach an exact zero, are short-circuited to exact answers.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .enums import Membership, TypeMethod
from .errors import (
    InsufficientDepthError,
    InvalidFieldValueError,
    NotInEalphaError,
    PrecisionExhaustedError,
)
from .operators import MatrixOperator, OperatorSpec, apply, operator_norm_bound
from .padic_arith import MINUS_INFINITY, Exponent, LogNorm, exponent_str, norm
from .spaces import Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormSequence:
    exponents: Tuple[Exponent, ...]
    """e_0 ... e_K with p^{e_k} = ||A^k x||."""
    depth: int
    eventually_zero: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponents", tuple(self.exponents))

    @classmethod
    def from_exponents(cls, exponents: Sequence[Exponent]) -> "NormSequence":
        """Build from raw exponents; everything after the first -inf is forced to -inf."""
        cleaned = []
        zero_seen = False
        for e in exponents:
            zero_seen = zero_seen or e == MINUS_INFINITY
            cleaned.append(MINUS_INFINITY if zero_seen else Fraction(e))
        return cls(tuple(cleaned), len(cleaned) - 1, zero_seen)

    def norm(self, k: int) -> LogNorm:
        return LogNorm(self.exponents[k])

    def rate(self, k: int) -> LogNorm:
        """||A^k x||^{1/k}, k >= 1."""
        return LogNorm(self.exponents[k]).root(k)

    def weighted(self, alpha: LogNorm) -> Tuple[Exponent, ...]:
        """e_k - k * alpha_exponent, the exponents of ||A^k x|| / alpha^k."""
        return tuple(
            e if e == MINUS_INFINITY else e - k * alpha.exponent
            for k, e in enumerate(self.exponents)
        )


@dataclass(frozen=True)
class TypeEstimate:
    sigma: LogNorm
    method: TypeMethod
    window: int
    depth: int


@dataclass(frozen=True)
class AlphaNorm:
    value: LogNorm
    """max_{k <= K} ||A^k x|| / alpha^k."""
    attained_at: Optional[int]
    certified: bool
    """The truncated sup is provably the full sup."""


def default_window(depth: int) -> int:
    return max(1, depth // 4)


def _resolve_window(depth: int, window: Optional[int]) -> int:
    window = default_window(depth) if window is None else window
    if window < 1 or window > depth:
        raise InsufficientDepthError(depth, max(window, 1))
    return window


def norm_sequence(A: OperatorSpec, x, depth: int) -> NormSequence:
    """
    Exponents of ||A^k x|| for k = 0 ... depth, stopping early on an exact zero.

    :raises PrecisionExhaustedError: carrying the k at which a norm became undeterminable.
    """
    if depth < 1:
        raise InvalidFieldValueError(
            field_name="depth", reason="Depth must be at least 1.", field_value=depth
        )
    exponents = []
    current = x
    for k in range(depth + 1):
        if current.is_exact_zero:
            logger.debug("norm sequence reached an exact zero at k=%d", k)
            exponents.extend([MINUS_INFINITY] * (depth + 1 - k))
            return NormSequence(tuple(exponents), depth, True)
        try:
            exponents.append(current.norm().exponent)
        except PrecisionExhaustedError as error:
            raise PrecisionExhaustedError(error.message, depth=k) from error
        if k < depth:
            current = apply(A, current)
    return NormSequence(tuple(exponents), depth, False)


def estimate_type(seq: NormSequence, window: int) -> TypeEstimate:
    """
    The window-limsup estimate max_{K - window < k <= K} e_k / k, or sigma = 0 for an
    eventually zero sequence.
    """
    if seq.eventually_zero:
        return TypeEstimate(LogNorm.zero(), TypeMethod.EVENTUALLY_ZERO, window, seq.depth)
    if window < 1 or seq.depth < window:
        raise InsufficientDepthError(seq.depth, max(window, 1))
    first = max(1, seq.depth - window + 1)
    sigma = max(seq.rate(k) for k in range(first, seq.depth + 1))
    return TypeEstimate(sigma, TypeMethod.WINDOW_LIMSUP, window, seq.depth)


def _known_nonzero(x) -> Optional[Tuple[bool, ...]]:
    if any(e.is_zero_at_precision for e in x.entries):
        return None
    return tuple(not e.is_exact_zero for e in x.entries)


def closed_form_type(A: OperatorSpec, x) -> Optional[LogNorm]:
    """
    The exact type for the matrix shapes where it is known, otherwise None.

    * diagonal: max |a_ii| over the coordinates where x_i is nonzero;
    * strictly upper triangular (nilpotent): 0;
    * upper triangular whose last diagonal entry bounds every entry, with x_n nonzero: |a_nn|.
    """
    if not isinstance(A, MatrixOperator) or not isinstance(x, Vector):
        return None
    support = _known_nonzero(x)
    if support is None:
        return None
    if not any(support):
        return LogNorm.zero()
    n = A.dimension
    if A.is_diagonal:
        diagonal = [A.entry(i, i) for i in range(n) if support[i]]
        if any(a.is_zero_at_precision for a in diagonal):
            return None
        return max(norm(a) for a in diagonal)
    if A.is_strictly_upper_triangular:
        return LogNorm.zero()
    if A.is_upper_triangular and support[n - 1]:
        last = A.entry(n - 1, n - 1)
        if last.is_zero:
            return None
        try:
            bounded = operator_norm_bound(A) <= norm(last)
        except PrecisionExhaustedError:
            return None
        if bounded:
            return norm(last)
    return None


def type_of(
    A: OperatorSpec,
    x,
    depth: int,
    window: Optional[int] = None,
    sequence: Optional[NormSequence] = None,
) -> TypeEstimate:
    """
    The closed form when one applies, else the window estimate clamped to ||A||.

    The clamp is sound because sigma(x; A) <= ||A|| for bounded A.
    """
    window = default_window(depth) if window is None else window
    closed = closed_form_type(A, x)
    if closed is not None:
        return TypeEstimate(closed, TypeMethod.EXACT_CLOSED_FORM, window, depth)
    seq = sequence if sequence is not None else norm_sequence(A, x, depth)
    estimate = estimate_type(seq, window)
    ceiling = operator_norm_bound(A)
    if estimate.sigma > ceiling:
        logger.debug("type estimate %s clamped to the operator norm %s", estimate.sigma, ceiling)
        return TypeEstimate(ceiling, estimate.method, window, depth)
    return estimate


def _check_alpha(alpha: LogNorm) -> None:
    if not alpha.is_finite:
        raise InvalidFieldValueError(
            field_name="alpha",
            reason="Alpha must be a positive finite magnitude.",
            field_value=str(alpha),
        )


def _first_max(values: Sequence[Exponent]) -> Tuple[Exponent, int]:
    best, where = values[0], 0
    for k, value in enumerate(values):
        if value > best:
            best, where = value, k
    return best, where


def alpha_norm(
    A: OperatorSpec, x, alpha: LogNorm, depth: int, window: Optional[int] = None
) -> AlphaNorm:
    """
    ||x||_alpha = sup_n ||A^n x|| / alpha^n, truncated at depth.

    :raises NotInEalphaError: when the maximum is reached inside the final window, i.e.
        the weighted sequence is still growing at the computed depth.
    """
    _check_alpha(alpha)
    window = _resolve_window(depth, window)
    seq = norm_sequence(A, x, depth)
    if seq.exponents[0] == MINUS_INFINITY:
        return AlphaNorm(LogNorm.zero(), None, True)
    weighted = seq.weighted(alpha)
    best, where = _first_max(weighted)
    if seq.eventually_zero:
        return AlphaNorm(LogNorm(best), where, True)
    if where > depth - window:
        raise NotInEalphaError(alpha.render(), depth)
    tail = weighted[depth - window + 1 :]
    decreasing = all(later <= earlier for earlier, later in zip(tail, tail[1:]))
    contracting = operator_norm_bound(A) <= alpha
    certified = contracting or (
        decreasing and estimate_type(seq, window).sigma < alpha
    )
    return AlphaNorm(LogNorm(best), where, certified)


def e_alpha_member(
    A: OperatorSpec, x, alpha: LogNorm, depth: int, window: Optional[int] = None
) -> Membership:
    """
    Three-valued membership of x in E_alpha(A) at finite depth.

    member: the sequence is eventually zero, the type is below alpha, or the type equals
    alpha and the weighted sup has stabilised before the final window;
    non_member_at_depth: the type exceeds alpha and ||A^K x|| / alpha^K is the running max;
    undecided otherwise.
    """
    _check_alpha(alpha)
    window = _resolve_window(depth, window)
    seq = norm_sequence(A, x, depth)
    if seq.eventually_zero:
        return Membership.MEMBER
    sigma = type_of(A, x, depth, window, sequence=seq).sigma
    if sigma < alpha:
        return Membership.MEMBER
    weighted = seq.weighted(alpha)
    split = depth - window + 1
    prior = max(weighted[:split])
    final = max(weighted[split:])
    if sigma <= alpha and final <= prior:
        return Membership.MEMBER
    if sigma > alpha and weighted[-1] >= max(weighted):
        return Membership.NON_MEMBER_AT_DEPTH
    return Membership.UNDECIDED


@dataclass(frozen=True)
class ShiftComparison:
    of_x: TypeEstimate
    of_image: TypeEstimate
    tolerance: Fraction
    agree: bool


def shift_invariance(
    A: OperatorSpec, x, depth: int, window: Optional[int] = None
) -> ShiftComparison:
    """
    Compare the window estimates for x and Ax, which share the same true type.

    The two windows are offset by one index, so agreement is read within
    (1 + |sigma|) * 2 / depth.
    """
    window = _resolve_window(depth, window)
    of_x = estimate_type(norm_sequence(A, x, depth), window)
    of_image = estimate_type(norm_sequence(A, apply(A, x), depth), window)
    if of_x.sigma.is_zero or of_image.sigma.is_zero:
        tolerance = Fraction(0)
        agree = of_x.sigma == of_image.sigma
    else:
        tolerance = (1 + abs(of_x.sigma.exponent)) * Fraction(2, depth)
        agree = abs(of_x.sigma.exponent - of_image.sigma.exponent) <= tolerance
    logger.debug(
        "shift comparison %s vs %s (tolerance %s)",
        exponent_str(of_x.sigma.exponent),
        exponent_str(of_image.sigma.exponent),
        tolerance,
    )
    return ShiftComparison(of_x, of_image, tolerance, agree)
