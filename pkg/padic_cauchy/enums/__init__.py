"""padic-cauchy Enumerations"""
from enum import Enum

from .error_code import ErrorCode
from .error_type import ErrorType
from .regex_patterns import RegexPatterns


class Constants(Enum):
    """Fixed values shared by the solvers, the verify suites and the test-suite."""

    PLUS_INFINITY_LABEL = "inf"
    MINUS_INFINITY_LABEL = "-inf"
    UNBOUNDED_LABEL = "unbounded"
    DEFAULT_SEED = 0


class Boundary(Enum):
    """Whether a disk includes its boundary circle."""

    OPEN = "open"
    CLOSED = "closed"


class TypeMethod(Enum):
    """How a type estimate was obtained."""

    EXACT_CLOSED_FORM = "exact_closed_form"
    EVENTUALLY_ZERO = "eventually_zero"
    WINDOW_LIMSUP = "window_limsup"


class GrowthSource(Enum):
    """Where a certified growth bound ||A^k y0|| <= c * alpha^k comes from."""

    OBSERVED = "observed"
    OPERATOR_NORM = "operator_norm"
    EVENTUALLY_ZERO = "eventually_zero"


class Membership(Enum):
    """Three-valued verdict for membership of a vector in E_alpha(A)."""

    MEMBER = "member"
    NON_MEMBER_AT_DEPTH = "non_member_at_depth"
    UNDECIDED = "undecided"


class ProblemMode(Enum):
    """The kind of run a problem file describes."""

    ODE = "ode"
    PDE = "pde"
    ANALYZE = "analyze"


class OutputFormat(Enum):
    """Report renderings offered by the command-line front end."""

    TEXT = "text"
    MACHINE = "machine"


class Suite(Enum):
    """Verification suites runnable through `verify --suite`."""

    LEGENDRE = "legendre"
    ASYMPTOTICS = "asymptotics"
    RADIUS_LAW = "radius-law"
    ORACLE = "oracle"
    RESIDUAL = "residual"
    WELLPOSEDNESS = "wellposedness"
    NORM_BOUNDS = "norm-bounds"
    PDE = "pde"
    COROLLARY = "corollary"
    ALL = "all"


def does_member_value_exist(m: str, enum_to_search) -> bool:
    """
    Checks if a member value exists on an Enum.

    :param str m: The member value to validate.
    :param enum_to_search: The enumeration to check the member value against.
    """
    return False if m not in (member.value for member in enum_to_search) else True
