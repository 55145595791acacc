"""
du/dt = sum_beta a_beta(x) D^beta u, u(0, x) = phi(x), as the abstract Cauchy problem
on A_rho. There is no solver here: the operator is handed to `build_solution`.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .analytic_space import AnalyticFunction, degree
from .cauchy_solver import (
    GrowthModel,
    SeriesSolution,
    build_solution,
    partial_sum,
    radius_from_sigma,
    tail_bound,
)
from .enums import GrowthSource
from .errors import OutsideDiskError, SpaceMismatchError
from .operators import DifferentialOperator, apply, operator_norm_bound
from .padic_arith import PadicNumber, render
from .spaces import Disk, disk_contains

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PdeProblem:
    operator: DifferentialOperator
    initial: AnalyticFunction
    time_depth: int

    def __post_init__(self) -> None:
        if self.initial.space != self.operator.space:
            raise SpaceMismatchError("Initial data and coefficients live in different spaces")


@dataclass(frozen=True)
class PdeSolution:
    problem: PdeProblem
    time_coefficients: Tuple[AnalyticFunction, ...]
    """u_0 ... u_K with u(t, x) = sum_k u_k(x) t^k."""
    disk: Disk
    series: SeriesSolution


def convergence_disk(op: DifferentialOperator) -> Disk:
    """|t| < p^{-1/(p-1)} / max_beta rho^{-|beta|} ||a_beta||_rho."""
    return Disk.open(radius_from_sigma(operator_norm_bound(op), op.prime.p))


def solve_pde(prob: PdeProblem, window: Optional[int] = None) -> PdeSolution:
    series = build_solution(prob.operator, prob.initial, prob.time_depth, window)
    disk = convergence_disk(prob.operator)
    logger.debug("pde solved to depth %d, disk %s", prob.time_depth, disk.render())
    return PdeSolution(prob, series.coefficients, disk, series)


def evaluate_in_time(sol: PdeSolution, t: PadicNumber) -> AnalyticFunction:
    """
    u(t, .) as an element of A_rho; the tail of the t-series is folded into the
    truncation norm instead of capping coefficients.
    """
    if not disk_contains(sol.disk, t):
        raise OutsideDiskError(render(t), sol.disk.radius.render(sol.series.prime))
    value = partial_sum(sol.series, t)
    tail = tail_bound(sol.series, t).bound
    if tail.is_unbounded:
        model = GrowthModel(
            sol.problem.initial.norm(),
            operator_norm_bound(sol.problem.operator),
            GrowthSource.OPERATOR_NORM,
        )
        tail = tail_bound(sol.series, t, model=model).bound
    if tail.is_zero:
        return value
    return value.space.function(value.coefficients, max(value.truncation_norm, tail))


def degree_bound_holds(sol: PdeSolution) -> bool:
    """deg u_k <= deg phi + k * max_beta deg a_beta."""
    growth = max((degree(a) for a in sol.problem.operator.terms.values()), default=0)
    start = degree(sol.problem.initial)
    return all(
        degree(u) <= start + k * growth for k, u in enumerate(sol.time_coefficients)
    )


def disk_consistent(sol: PdeSolution) -> bool:
    """The operator-norm disk sits inside the disk of the series itself."""
    return sol.disk.radius <= sol.series.radius


def recurrence_holds(sol: PdeSolution) -> bool:
    """k u_k = A u_{k-1} for every k."""
    op = sol.problem.operator
    u = sol.time_coefficients
    return all(u[k].multiply_int(k).agrees_with(apply(op, u[k - 1])) for k in range(1, len(u)))
