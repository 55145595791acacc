"""The `padic-cauchy` command: analyze, solve-ode, solve-pde and verify."""
import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from padic_cauchy.analytic_space import AnalyticFunction, AnalyticSpace, parse_polynomial
from padic_cauchy.cauchy_solver import (
    SeriesSolution,
    WellposednessReport,
    derivative_at_origin,
    evaluate,
    residual_check,
    solve_rational_ode,
    wellposedness_check,
    working_precision,
)
from padic_cauchy.enums import OutputFormat, ProblemMode, Suite
from padic_cauchy.errors import (
    InputParseError,
    InvalidFieldValueError,
    OutsideDiskError,
    PadicError,
    ValidationError,
)
from padic_cauchy.exp_type import (
    NormSequence,
    alpha_norm,
    e_alpha_member,
    estimate_type,
    norm_sequence,
    shift_invariance,
    type_of,
)
from padic_cauchy.operators import DifferentialOperator, MatrixOperator, operator_norm_bound
from padic_cauchy.padic_arith import compact, exponent_str, parse_padic
from padic_cauchy.padic_config import PadicConfig
from padic_cauchy.pde_ck import (
    PdeProblem,
    PdeSolution,
    degree_bound_holds,
    disk_consistent,
    evaluate_in_time,
    recurrence_holds,
    solve_pde,
)
from padic_cauchy.spaces import Vector
from padic_cauchy.util import parse_rational
from padic_cauchy.verification import SuiteSettings, run_suites
from padic_cauchy.version import __version__

from .problem_file import ProblemFile, load_problem
from .report import PointResult, Report, SuiteOutcome, Table, render

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (InputParseError, ValidationError, InvalidFieldValueError)


def _add_common_arguments(parser: argparse.ArgumentParser, needs_file: bool) -> None:
    parser.add_argument("--file", required=needs_file, help="Problem file (JSON).")
    parser.add_argument("--p", type=int, help="The prime p.")
    parser.add_argument("--precision", type=int, help="Relative precision N in p-adic digits.")
    parser.add_argument("--terms", type=int, help="Series depth K (at least 4).")
    parser.add_argument("--epsilon", help="Well-posedness shrink factor, a rational in (0, 1).")
    parser.add_argument("--window", type=int, help="Window of the limsup estimate.")
    parser.add_argument("--workers", type=int, help="Thread pool width.")
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Report rendering (default text).",
    )
    parser.add_argument("--out", help="Write the report here instead of standard output.")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on stderr.")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padic-cauchy",
        description="Series solutions of p-adic Cauchy problems y' = Ay and their checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "Norm sequence, type and E_alpha membership of y0 under A."),
        ("solve-ode", "Solve y' = Ay, y(0) = y0 and evaluate at the problem's points."),
        ("solve-pde", "Solve du/dt = sum a_beta D^beta u on A_rho."),
    ):
        _add_common_arguments(commands.add_parser(name, help=help_text), needs_file=True)
    verify = commands.add_parser("verify", help="Run the verification suites.")
    _add_common_arguments(verify, needs_file=False)
    verify.add_argument(
        "--suite",
        choices=[s.value for s in Suite],
        default=Suite.ALL.value,
        help="Suite to run (default all).",
    )
    verify.add_argument("--max-n", type=int, default=2000, help="Largest n for the legendre suite.")
    verify.add_argument("--seed", type=int, default=0, help="Seed of the random instances.")
    return parser


def configure_logging(verbose: bool) -> None:
    package = logging.getLogger("padic_cauchy")
    package.setLevel(logging.DEBUG if verbose else logging.WARNING)
    for old in [h for h in package.handlers if getattr(h, "_padic_cli", False)]:
        package.removeHandler(old)
    # bound to the current stderr on every run
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._padic_cli = True
    package.addHandler(handler)


def _flag_settings(args: argparse.Namespace) -> Dict[str, Any]:
    return dict(
        prime=args.p,
        precision=args.precision,
        terms=args.terms,
        epsilon=args.epsilon,
        window=args.window,
        workers=args.workers,
    )


def _load(args: argparse.Namespace) -> Tuple[Optional[ProblemFile], PadicConfig]:
    """Defaults and environment, then the problem file, then command-line flags."""
    config = PadicConfig()
    problem = None
    if args.file is not None:
        problem = load_problem(args.file)
        config = config.merge(problem.settings())
    return problem, config.merge(_flag_settings(args))


def _echo(report: Report, config: PadicConfig, problem: Optional[ProblemFile]) -> None:
    report.inputs.update({key: str(value) for key, value in config.to_dict().items()})
    if problem is not None:
        report.inputs["problem"] = problem.to_json(sort_keys=True)


def _require_mode(problem: ProblemFile, *modes: ProblemMode) -> None:
    if problem.problem_mode not in modes:
        raise ValidationError(
            f"Mode [{problem.mode}] cannot be run by this command; expected "
            + " or ".join(mode.value for mode in modes)
        )


def _rationals(values: Sequence[Any]) -> List:
    return [parse_rational(str(value)) for value in values]


def _matrix_problem(problem: ProblemFile) -> Tuple[List[List], List]:
    return [_rationals(row) for row in problem.matrix], _rationals(problem.initial)


def _in_pool(workers: int, task: Callable, items: Sequence) -> List:
    """Map `task` over independent items; results keep the input order."""
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(task, items))


# analyze


def _norm_table(seq: NormSequence) -> Table:
    """(k, e_k, e_k / k) with ||A^k x|| = p^{e_k}."""
    table = Table(["k", "e_k", "e_k/k"])
    for k, e in enumerate(seq.exponents):
        rate = exponent_str(seq.rate(k).exponent) if k else "-"
        table.add_row(k, exponent_str(e), rate)
    return table


def analyze(args: argparse.Namespace) -> Report:
    problem, config = _load(args)
    _require_mode(problem, ProblemMode.ANALYZE, ProblemMode.ODE)
    rows, initial = _matrix_problem(problem)
    p, depth = config.prime, config.terms
    window = config.effective_window
    A = MatrixOperator.from_rationals(rows, p, config.precision)
    y0 = Vector.from_rationals(initial, p, config.precision)
    report = Report(command="analyze")
    _echo(report, config, problem)

    seq = norm_sequence(A, y0, depth)
    sigma = type_of(A, y0, depth, window, sequence=seq)
    estimate = estimate_type(seq, window)
    ceiling = operator_norm_bound(A)
    report.results.update(
        {
            "sigma_exponent": exponent_str(sigma.sigma.exponent),
            "sigma_method": sigma.method.value,
            "window_estimate_exponent": exponent_str(estimate.sigma.exponent),
            "window_estimate_method": estimate.method.value,
            "window": str(window),
            "operator_norm_exponent": exponent_str(ceiling.exponent),
        }
    )
    report.tables["norm_sequence"] = _norm_table(seq)
    if ceiling.is_finite:
        report.results["membership_at_operator_norm"] = e_alpha_member(
            A, y0, ceiling, depth, window
        ).value
        weighted = alpha_norm(A, y0, ceiling, depth, window)
        report.results["alpha_norm_exponent"] = exponent_str(weighted.value.exponent)
        report.results["alpha_norm_certified"] = str(weighted.certified).lower()
    comparison = shift_invariance(A, y0, depth, window)
    report.add_check(
        "shift invariance",
        comparison.agree,
        f"{exponent_str(comparison.of_x.sigma.exponent)} vs "
        f"{exponent_str(comparison.of_image.sigma.exponent)} (tolerance {comparison.tolerance})",
    )
    return report.finalize()


# solve-ode


def _evaluate_point(sol: SeriesSolution, raw: Any, precision: int, display: int):
    z = parse_padic(str(raw), sol.prime, precision)
    try:
        value, tail = evaluate(sol, z)
    except OutsideDiskError as error:
        return PointResult(str(raw), [], "outside disk"), (False, error.message)
    check = residual_check(sol, z)
    result = PointResult(
        point=str(raw),
        value=[compact(x, display) for x in value.entries],
        tail=tail.bound.render(sol.prime),
        residual=exponent_str(check.residual.exponent),
        residual_bound=exponent_str(max(check.bound, check.floor).exponent),
    )
    return result, (check.holds, f"residual at z = {raw}")


def _wellposedness_table(wellposed: WellposednessReport, p: int) -> Table:
    """One row per perturbation and shell z = p^m; the bound is ||y_{n,0} - y0|| / epsilon."""
    table = Table(["perturbation", "shell", "difference", "bound", "margin", "holds"])
    for row in wellposed.rows:
        table.add_row(
            row.perturbation,
            row.shell,
            row.lhs.render(p),
            f"{row.rhs.render(p)} / {wellposed.epsilon}",
            exponent_str(row.margin),
            str(row.holds).lower(),
        )
    return table


def solve_ode(args: argparse.Namespace) -> Report:
    problem, config = _load(args)
    _require_mode(problem, ProblemMode.ODE, ProblemMode.ANALYZE)
    rows, initial = _matrix_problem(problem)
    p, depth = config.prime, config.terms
    sol = solve_rational_ode(rows, initial, p, config.precision, depth, config.window)
    digits = working_precision(config.precision, depth, p)
    report = Report(command="solve-ode")
    _echo(report, config, problem)
    report.results.update(
        {
            "working_precision": str(digits),
            "sigma_exponent": exponent_str(sol.sigma.sigma.exponent),
            "sigma_method": sol.sigma.method.value,
            "radius": sol.radius.render(p),
            "radius_exponent": exponent_str(sol.radius.exponent),
            "growth_model": sol.alpha_cert.source.value,
            "growth_alpha_exponent": exponent_str(sol.alpha_cert.alpha.exponent),
        }
    )
    report.coefficients = [
        [compact(x, config.display_digits) for x in c.entries] for c in sol.coefficients
    ]
    outcomes = _in_pool(
        config.workers,
        lambda raw: _evaluate_point(sol, raw, digits, config.display_digits),
        problem.points,
    )
    for result, (holds, detail) in outcomes:
        report.evaluations.append(result)
        report.add_check("residual" if result.value else "inside disk", holds, detail)
    origin = [derivative_at_origin(sol, k) for k in range(1, min(3, depth) + 1)]
    report.add_check(
        "derivatives at the origin", all(d.agrees for d in origin), "y^(k)(0) = A^k y0, k <= 3"
    )
    if problem.perturbations:
        A, y0 = sol.operator, sol.initial
        perturbed = [Vector.from_rationals(_rationals(v), p, digits) for v in problem.perturbations]
        wellposed = wellposedness_check(
            A, y0, perturbed, config.epsilon, depth, config.shells, config.window
        )
        report.results["wellposedness_delta"] = wellposed.delta.render(p)
        report.results["wellposedness_shells"] = ", ".join(str(m) for m in wellposed.shells)
        report.tables["wellposedness"] = _wellposedness_table(wellposed, p)
        report.add_check(
            "well-posedness",
            wellposed.holds,
            f"{len(wellposed.rows)} rows, worst margin {exponent_str(wellposed.worst_margin)}",
        )
    return report.finalize()


# solve-pde


def _pde_problem(problem: ProblemFile, config: PadicConfig) -> PdeProblem:
    space = AnalyticSpace(
        config.prime,
        problem.variables,
        parse_rational(str(problem.rho_exponent)),
        config.truncation_degree,
    )
    terms: Dict[Tuple[int, ...], AnalyticFunction] = dict()
    for term in problem.terms:
        beta = tuple(term.beta)
        coefficient = parse_polynomial(term.coefficient, space, config.precision)
        terms[beta] = terms[beta] + coefficient if beta in terms else coefficient
    operator = DifferentialOperator(space, terms, problem.max_order)
    initial = parse_polynomial(problem.initial, space, config.precision)
    return PdeProblem(operator, initial, config.terms)


def _evaluate_time(sol: PdeSolution, raw: Any, precision: int):
    t = parse_padic(str(raw), sol.series.prime, precision)
    try:
        value = evaluate_in_time(sol, t)
    except OutsideDiskError as error:
        return PointResult(str(raw), [], "outside disk"), (False, error.message)
    result = PointResult(str(raw), [value.render()], value.truncation_norm.render(value.prime))
    return result, (True, f"u(t, x) at t = {raw}")


def solve_pde_command(args: argparse.Namespace) -> Report:
    problem, config = _load(args)
    _require_mode(problem, ProblemMode.PDE)
    sol = solve_pde(_pde_problem(problem, config), config.window)
    p = config.prime
    report = Report(command="solve-pde")
    _echo(report, config, problem)
    report.results.update(
        {
            "operator": sol.problem.operator.render(),
            "operator_norm_exponent": exponent_str(
                operator_norm_bound(sol.problem.operator).exponent
            ),
            "disk": sol.disk.render(p),
            "series_radius": sol.series.radius.render(p),
            "sigma_exponent": exponent_str(sol.series.sigma.sigma.exponent),
            "sigma_method": sol.series.sigma.method.value,
        }
    )
    report.coefficients = [[u.render()] for u in sol.time_coefficients]
    outcomes = _in_pool(
        config.workers, lambda raw: _evaluate_time(sol, raw, config.precision), problem.points
    )
    for result, (holds, detail) in outcomes:
        report.evaluations.append(result)
        report.add_check("inside disk", holds, detail)
    report.add_check("degree bound", degree_bound_holds(sol), "deg u_k <= deg u_0 + k * deg a")
    report.add_check("disk inside the series disk", disk_consistent(sol))
    report.add_check("recurrence", recurrence_holds(sol), "k u_k = A u_(k-1)")
    return report.finalize()


# verify


def verify(args: argparse.Namespace) -> Report:
    _, config = _load(args)
    report = Report(command="verify")
    _echo(report, config, None)
    report.inputs.update(suite=args.suite, seed=str(args.seed), max_n=str(args.max_n))
    settings = SuiteSettings(seed=args.seed, max_n=args.max_n, workers=config.workers)
    for result in run_suites([Suite(args.suite)], settings):
        report.suites.append(
            SuiteOutcome(
                name=result.name,
                status="pass" if result.passed else "fail",
                checked=result.checked,
                failures=list(result.failures),
                details=dict(result.details),
            )
        )
    return report.finalize()


COMMANDS: Dict[str, Callable[[argparse.Namespace], Report]] = {
    "analyze": analyze,
    "solve-ode": solve_ode,
    "solve-pde": solve_pde_command,
    "verify": verify,
}


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run the command and write its report.

    :returns: 0 when every check passes, 1 on a failed check or a solver error,
        2 on an input error.
    """
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return EXIT_INPUT_ERROR if exit_request.code else EXIT_OK
    configure_logging(args.verbose)
    output_format = OutputFormat(args.format)
    try:
        report = COMMANDS[args.command](args)
    except INPUT_ERRORS as error:
        logger.error("input error: %s", error.message)
        sys.stderr.write(error.to_json() + "\n")
        return EXIT_INPUT_ERROR
    except PadicError as error:
        logger.error("%s failed: %s", args.command, error.message)
        report = Report(command=args.command, status="fail")
        report.results.update({key: str(value) for key, value in error.to_dict().items()})
    _write(render(report, output_format), args.out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run())
