"""
Seeded verification suites that cross-check the solvers against exact arithmetic and
against the closed-form laws they rely on.

Every suite is a function `(settings) -> SuiteResult`; `run_suites` fans them out over
a thread pool and returns results in the order they were requested.
"""
import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .analytic_space import (
    AnalyticFunction,
    AnalyticSpace,
    multiply,
    partial_derivative,
    rho_norm,
)
from .cauchy_solver import (
    SeriesSolution,
    build_solution,
    evaluate,
    partial_sum,
    radius_from_coefficients,
    radius_from_sigma,
    residual_check,
    solve_rational_ode,
    tail_soundness,
    wellposedness_check,
)
from .enums import Constants, Suite
from .errors import InvalidFieldValueError, PrecisionExhaustedError
from .exp_type import closed_form_type, default_window, estimate_type
from .oracle import (
    exact_partial_derivative,
    exact_product,
    exact_series_partial_sum,
    exp_partial_sum,
    factorial_valuation_table,
    rational_valuation,
    reduce_mod_pN,
)
from .operators import DifferentialOperator, MatrixOperator, operator_norm_bound
from .padic_arith import (
    LogNorm,
    PadicNumber,
    agrees_with,
    as_prime,
    exact_rational,
    exponent_str,
    factorial_norm_bound,
    from_int,
    power_of_p,
    vp_factorial,
)
from .pde_ck import (
    PdeProblem,
    degree_bound_holds,
    disk_consistent,
    evaluate_in_time,
    recurrence_holds,
    solve_pde,
)
from .spaces import Vector
from .util import radius_law_exponent

logger = logging.getLogger(__name__)

LEGENDRE_PRIMES = (2, 3, 5, 7, 11)
SERIES_PRIMES = (2, 3, 5)
ORACLE_PRECISION = 32
RADIUS_LAW_DEPTH = 64
ASYMPTOTICS_N = 10 ** 4
ASYMPTOTICS_TOLERANCE = Fraction(2, 1000)
RATIONAL_INSTANCES = 25


@dataclass(frozen=True)
class SuiteSettings:
    seed: int = Constants.DEFAULT_SEED.value
    max_n: int = 2000
    workers: int = 1


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: List[str] = field(default_factory=list)
    details: Dict[str, str] = field(default_factory=dict)


class _Tally:
    """Counts checks and keeps the first few failure messages."""

    KEEP = 20

    def __init__(self, name: str) -> None:
        self.name = name
        self.checked = 0
        self.failed = 0
        self.failures: List[str] = []
        self.details: Dict[str, str] = dict()

    def check(self, ok: bool, message: str) -> bool:
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < self.KEEP:
                self.failures.append(message)
        return ok

    def result(self) -> SuiteResult:
        if self.failed > len(self.failures):
            self.failures.append(f"... {self.failed - len(self.failures)} more")
        return SuiteResult(self.name, self.failed == 0, self.checked, self.failures, self.details)


def _rng(settings: SuiteSettings, suite: Suite) -> random.Random:
    # one stream per suite, so suites are reproducible in isolation
    return random.Random(f"{settings.seed}:{suite.value}")


def _unit(rng: random.Random, p: int, bound: int = 9) -> int:
    while True:
        value = rng.randint(1, bound)
        if value % p:
            return value if rng.random() < 0.5 else -value


def _exact_entry(rng: random.Random, p: int, valuation: int) -> PadicNumber:
    """p^valuation * u / w with p-free integers u, w."""
    numerator = _unit(rng, p) * p ** max(valuation, 0)
    denominator = abs(_unit(rng, p, 5)) * p ** max(-valuation, 0)
    return exact_rational(numerator, denominator, p)


def _unit_vector(rng: random.Random, p: int, n: int) -> Vector:
    return Vector(as_prime(p), tuple(from_int(_unit(rng, p), p) for _ in range(n)))


# legendre


def legendre_suite(settings: SuiteSettings) -> SuiteResult:
    """vp_factorial against factor counting and the factorization of n! itself."""
    tally = _Tally(Suite.LEGENDRE.value)
    for p in LEGENDRE_PRIMES:
        table = factorial_valuation_table(settings.max_n, p)
        factorial = 1
        for n in range(settings.max_n + 1):
            if n > 1:
                factorial *= n
            value = vp_factorial(n, p)
            tally.check(value == table[n], f"p={p} n={n}: {value} vs counted {table[n]}")
            direct = rational_valuation(Fraction(factorial), p)
            tally.check(value == direct, f"p={p} n={n}: {value} vs factorized {direct}")
    tally.details["max_n"] = str(settings.max_n)
    tally.details["primes"] = ",".join(str(p) for p in LEGENDRE_PRIMES)
    return tally.result()


# asymptotics


def asymptotics_suite(settings: SuiteSettings) -> SuiteResult:
    """v_p(n!) / n approaches 1 / (p - 1), and 1 / |k!|_p <= p^{k/(p-1)} along the way."""
    tally = _Tally(Suite.ASYMPTOTICS.value)
    n = ASYMPTOTICS_N
    for p in LEGENDRE_PRIMES:
        deviation = abs(Fraction(vp_factorial(n, p), n) - Fraction(1, p - 1))
        tally.check(
            deviation < ASYMPTOTICS_TOLERANCE, f"p={p}: |v_p(n!)/n - 1/(p-1)| = {deviation}"
        )
        tally.details[f"deviation_p{p}"] = str(deviation)
        for k in range(0, settings.max_n + 1, max(1, settings.max_n // 50)):
            bound = factorial_norm_bound(k, p)
            tally.check(bound.holds, f"p={p} k={k}: 1/|k!| exceeds p^(k/(p-1))")
    return tally.result()


# radius law


def _closed_form_instance(rng: random.Random, p: int) -> Tuple[MatrixOperator, Vector]:
    """A diagonal or upper-triangular matrix whose last diagonal entry dominates."""
    n = rng.randint(1, 4)
    top = rng.randint(-1, 2)
    diagonal_only = rng.random() < 0.5
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j == n - 1:
                row.append(_exact_entry(rng, p, top))
            elif i == j:
                row.append(_exact_entry(rng, p, top + rng.randint(0, 2)))
            elif j > i and not diagonal_only and rng.random() < 0.7:
                row.append(_exact_entry(rng, p, top + rng.randint(0, 2)))
            else:
                row.append(from_int(0, p))
        rows.append(tuple(row))
    return MatrixOperator(rows[0][0].prime, tuple(rows)), _unit_vector(rng, p, n)


def radius_law_suite(settings: SuiteSettings) -> SuiteResult:
    """The coefficient radius at depth 64 matches p^{-1/(p-1)} / sigma within 2 / K."""
    tally = _Tally(Suite.RADIUS_LAW.value)
    rng = _rng(settings, Suite.RADIUS_LAW)
    tolerance = Fraction(2, RADIUS_LAW_DEPTH)
    worst = Fraction(0)
    for index in range(50):
        p = rng.choice(SERIES_PRIMES)
        A, y0 = _closed_form_instance(rng, p)
        sigma = closed_form_type(A, y0)
        if not tally.check(sigma is not None, f"instance {index}: no closed-form type"):
            continue
        sol = build_solution(A, y0, RADIUS_LAW_DEPTH)
        measured = radius_from_coefficients(sol.coefficients)
        expected = radius_from_sigma(sigma, p)
        deviation = abs(measured.exponent - expected.exponent)
        worst = max(worst, deviation)
        tally.check(
            deviation <= tolerance,
            f"instance {index} (p={p}): radius p^({exponent_str(measured.exponent)}) "
            f"vs p^({exponent_str(expected.exponent)})",
        )
    tally.details["depth"] = str(RADIUS_LAW_DEPTH)
    tally.details["worst_deviation"] = str(worst)
    return tally.result()


# oracle and residual


@dataclass(frozen=True)
class _RationalInstance:
    p: int
    rows: Tuple[Tuple[Fraction, ...], ...]
    initial: Tuple[Fraction, ...]
    depth: int


def _rational(rng: random.Random, p: int) -> Fraction:
    if rng.random() < 0.2:
        return Fraction(0)
    numerator = rng.randint(-9, 9) * p ** rng.randint(0, 1)
    return Fraction(numerator, abs(_unit(rng, p, 7)))


def _rational_instances(settings: SuiteSettings) -> List[_RationalInstance]:
    rng = _rng(settings, Suite.ORACLE)
    instances = []
    for _ in range(RATIONAL_INSTANCES):
        p = rng.choice(SERIES_PRIMES)
        n = rng.randint(1, 4)
        rows = tuple(tuple(_rational(rng, p) for _ in range(n)) for _ in range(n))
        initial = tuple(Fraction(_unit(rng, p)) / abs(_unit(rng, p, 7)) for _ in range(n))
        instances.append(_RationalInstance(p, rows, initial, rng.randint(8, 40)))
    return instances


def _skip(tally: _Tally, index: int, error: PrecisionExhaustedError) -> None:
    """A truly vanishing A^k y0 built from inexact data cannot be normed; such draws are skipped."""
    skipped = int(tally.details.get("precision_exhausted", "0")) + 1
    tally.details["precision_exhausted"] = str(skipped)
    logger.debug("instance %d skipped: %s", index, error.message)


def _check_coverage(tally: _Tally) -> None:
    """At most half of the rational instances may be skipped."""
    skipped = int(tally.details.get("precision_exhausted", "0"))
    tally.check(
        2 * skipped <= RATIONAL_INSTANCES,
        f"{skipped} of {RATIONAL_INSTANCES} instances skipped on exhausted precision",
    )


def _sample_point(sol: SeriesSolution) -> PadicNumber:
    """An exact power of p strictly inside the disk of convergence."""
    p = sol.prime.p
    if sol.radius.is_unbounded:
        return power_of_p(1, p)
    return power_of_p(math.floor(-sol.radius.exponent) + 1, p)


def oracle_suite(settings: SuiteSettings) -> SuiteResult:
    """evaluate() agrees digit for digit with the exact partial sum reduced into Q_p."""
    tally = _Tally(Suite.ORACLE.value)
    smallest = None
    for index, instance in enumerate(_rational_instances(settings)):
        p = instance.p
        try:
            sol = solve_rational_ode(
                instance.rows, instance.initial, p, ORACLE_PRECISION, instance.depth
            )
        except PrecisionExhaustedError as error:
            _skip(tally, index, error)
            continue
        z = _sample_point(sol)
        value, _ = evaluate(sol, z)
        exact = exact_series_partial_sum(
            instance.rows, instance.initial, z.to_fraction(), sol.depth
        )
        reference_precision = ORACLE_PRECISION + 4 * sol.depth
        for i, (computed, q) in enumerate(zip(value.entries, exact)):
            reference = reduce_mod_pN(q, p, reference_precision)
            tally.check(
                agrees_with(computed, reference),
                f"instance {index} entry {i} (p={p}, K={sol.depth}): digits differ",
            )
            if not computed.is_exact:
                precision = computed.absolute_precision
                smallest = precision if smallest is None else min(smallest, precision)
    tally.details["precision"] = str(ORACLE_PRECISION)
    if smallest is not None:
        tally.details["smallest_absolute_precision"] = str(smallest)
    _check_coverage(tally)
    return tally.result()


def residual_suite(settings: SuiteSettings) -> SuiteResult:
    """Residuals stay under the combined tail; depth K vs K + 10 differences under TailBound(K)."""
    tally = _Tally(Suite.RESIDUAL.value)
    extra = 10
    for index, instance in enumerate(_rational_instances(settings)):
        try:
            sol = solve_rational_ode(
                instance.rows, instance.initial, instance.p, ORACLE_PRECISION, instance.depth
            )
            deep = solve_rational_ode(
                instance.rows,
                instance.initial,
                instance.p,
                ORACLE_PRECISION,
                instance.depth + extra,
            )
        except PrecisionExhaustedError as error:
            _skip(tally, index, error)
            continue
        z = _sample_point(sol)
        check = residual_check(sol, z)
        tally.check(
            check.holds,
            f"instance {index}: residual {check.residual} above bound {check.bound}",
        )
        if deep.radius < sol.radius:
            z = _sample_point(deep)
        soundness = tail_soundness(deep, z, instance.depth, extra)
        tally.check(
            soundness.holds,
            f"instance {index}: depth difference {soundness.difference} "
            f"above tail {soundness.bound}",
        )
    _check_coverage(tally)
    return tally.result()


# well-posedness


def wellposedness_suite(settings: SuiteSettings) -> SuiteResult:
    """Ten perturbations of each of ten base problems, for epsilon 1/2 and 1/4."""
    tally = _Tally(Suite.WELLPOSEDNESS.value)
    rng = _rng(settings, Suite.WELLPOSEDNESS)
    depth = 24
    rows_checked = 0
    for base in range(10):
        p = rng.choice(SERIES_PRIMES)
        n = rng.randint(1, 3)
        A = MatrixOperator(
            as_prime(p),
            tuple(
                tuple(from_int(rng.randint(-4, 4) * p ** rng.randint(0, 1), p) for _ in range(n))
                for _ in range(n)
            ),
        )
        y0 = _unit_vector(rng, p, n)
        perturbations = [
            y0
            + Vector(
                y0.prime,
                tuple(
                    from_int(rng.randint(-4, 4) * p ** rng.randint(1, 4), p) for _ in range(n)
                ),
            )
            for _ in range(10)
        ]
        for epsilon in (Fraction(1, 2), Fraction(1, 4)):
            report = wellposedness_check(A, y0, perturbations, epsilon, depth)
            rows_checked += len(report.rows)
            for row in report.rows:
                tally.check(
                    row.holds,
                    f"base {base} eps={epsilon} perturbation {row.perturbation} "
                    f"shell {row.shell}: {row.lhs} vs {row.rhs}",
                )
            for k, ok in enumerate(report.radius_ok):
                tally.check(ok, f"base {base} eps={epsilon}: r(y_{k}) below delta")
    tally.details["rows"] = str(rows_checked)
    return tally.result()


# norm bounds


def _random_polynomial(
    rng: random.Random, space: AnalyticSpace, max_degree: int
) -> AnalyticFunction:
    p = space.prime.p
    coefficients = dict()
    for _ in range(rng.randint(1, 8)):
        alpha = [0] * space.variables
        for _ in range(rng.randint(0, max_degree)):
            alpha[rng.randrange(space.variables)] += 1
        coefficients[tuple(alpha)] = _exact_entry(rng, p, rng.randint(-2, 2))
    return space.function(coefficients)


def _matches_exact(f: AnalyticFunction, exact: Dict[Tuple[int, ...], Fraction]) -> bool:
    keys = set(f.coefficients) | set(exact)
    return all(
        f.coefficient(alpha).to_fraction() == exact.get(alpha, Fraction(0)) for alpha in keys
    )


def _exact_coefficients(f: AnalyticFunction) -> Dict[Tuple[int, ...], Fraction]:
    return {alpha: c.to_fraction() for alpha, c in f.coefficients.items()}


def norm_bounds_suite(settings: SuiteSettings) -> SuiteResult:
    """||d_j f|| <= ||f|| / rho and ||f g|| <= ||f|| ||g|| on random polynomials."""
    tally = _Tally(Suite.NORM_BOUNDS.value)
    rng = _rng(settings, Suite.NORM_BOUNDS)
    for index in range(1000):
        p = rng.choice(SERIES_PRIMES)
        n = rng.randint(1, 3)
        rho = Fraction(rng.randint(-2, 2), rng.choice((1, 2)))
        space = AnalyticSpace(as_prime(p), n, rho, truncation_degree=16)
        f = _random_polynomial(rng, space, 8)
        g = _random_polynomial(rng, space, 8)
        j = rng.randint(1, n)
        derivative = partial_derivative(f, j)
        bound = LogNorm(rho_norm(f).exponent - rho) if not rho_norm(f).is_zero else LogNorm.zero()
        tally.check(
            rho_norm(derivative) <= bound,
            f"polynomial {index}: ||d_{j} f|| = {rho_norm(derivative)} above {bound}",
        )
        product = multiply(f, g)
        tally.check(
            rho_norm(product) <= rho_norm(f) * rho_norm(g),
            f"polynomial {index}: ||fg|| = {rho_norm(product)} above the product of norms",
        )
        if index % 10 == 0:
            exact_f = _exact_coefficients(f)
            tally.check(
                _matches_exact(derivative, exact_partial_derivative(exact_f, n, j)),
                f"polynomial {index}: derivative differs from the exact one",
            )
            tally.check(
                _matches_exact(product, exact_product(exact_f, _exact_coefficients(g), n)),
                f"polynomial {index}: product differs from the exact one",
            )
    return tally.result()


# pde


def _one_variable_space(p: int, rho_exponent: Fraction = Fraction(0)) -> AnalyticSpace:
    return AnalyticSpace(as_prime(p), 1, rho_exponent, truncation_degree=16)


def pde_suite(settings: SuiteSettings) -> SuiteResult:
    """Transport, reaction and Euler-type instances with known solutions."""
    tally = _Tally(Suite.PDE.value)
    for p in (3, 5, 7):
        space = _one_variable_space(p)
        one = space.constant(from_int(1, p))
        x = space.variable(1)

        transport = solve_pde(
            PdeProblem(DifferentialOperator(space, {(1,): one}), x, time_depth=8)
        )
        u = transport.time_coefficients
        tally.check(u[0].agrees_with(x), f"p={p} transport: u_0 is not x1")
        tally.check(u[1].agrees_with(one), f"p={p} transport: u_1 is not 1")
        tally.check(
            all(c.is_exact_zero for c in u[2:]), f"p={p} transport: u_k nonzero for some k >= 2"
        )

        depth = 40
        reaction = solve_pde(
            PdeProblem(DifferentialOperator(space, {(0,): one}), one, time_depth=depth)
        )
        t = power_of_p(1, p)
        for k in range(1, depth + 1):
            constant = partial_sum(reaction.series, t, k).coefficient((0,))
            reference = reduce_mod_pN(exp_partial_sum(Fraction(p), k), p, ORACLE_PRECISION)
            tally.check(
                agrees_with(constant, reference),
                f"p={p} reaction: partial sum to K={k} at t=p differs from the exp partial sum",
            )
        constant = evaluate_in_time(reaction, t).coefficient((0,))
        reference = reduce_mod_pN(exp_partial_sum(Fraction(p), depth), p, ORACLE_PRECISION)
        tally.check(
            agrees_with(constant, reference),
            f"p={p} reaction: constant term at t=p differs from the exp partial sum",
        )

        euler = solve_pde(PdeProblem(DifferentialOperator(space, {(1,): x}), x, time_depth=12))
        for k, coefficient in enumerate(euler.time_coefficients):
            tally.check(
                coefficient.coefficient((1,)).to_fraction() == Fraction(1, math.factorial(k)),
                f"p={p} euler: u_{k} is not x1/k!",
            )

        square = solve_pde(
            PdeProblem(DifferentialOperator(space, {(1,): x}), x * x, time_depth=12)
        )
        for k, coefficient in enumerate(square.time_coefficients):
            expected = Fraction(2 ** k, math.factorial(k))
            tally.check(
                coefficient.coefficient((2,)).to_fraction() == expected,
                f"p={p} euler: u_{k} is not 2^k/k! x1^2",
            )

        for name, sol in (
            ("transport", transport),
            ("reaction", reaction),
            ("euler", euler),
            ("euler square", square),
        ):
            tally.check(degree_bound_holds(sol), f"p={p} {name}: degree bound fails")
            tally.check(disk_consistent(sol), f"p={p} {name}: disk exceeds the series radius")
            tally.check(recurrence_holds(sol), f"p={p} {name}: k u_k != A u_(k-1)")
    return tally.result()


# corollary


def corollary_suite(settings: SuiteSettings) -> SuiteResult:
    """The radius is at least p^{-1/(p-1)} / ||A|| for bounded A and ||y0|| <= 1."""
    tally = _Tally(Suite.COROLLARY.value)
    rng = _rng(settings, Suite.COROLLARY)
    for index in range(50):
        p = rng.choice(SERIES_PRIMES)
        n = rng.randint(1, 4)
        A = MatrixOperator(
            as_prime(p),
            tuple(
                tuple(
                    _exact_entry(rng, p, rng.randint(-1, 2))
                    if rng.random() < 0.8
                    else from_int(0, p)
                    for _ in range(n)
                )
                for _ in range(n)
            ),
        )
        y0 = _unit_vector(rng, p, n)
        sol = build_solution(A, y0, 32)
        ceiling = operator_norm_bound(A)
        if ceiling.is_zero:
            tally.check(sol.radius.is_unbounded, f"instance {index}: zero operator, finite radius")
            continue
        floor = radius_law_exponent(p) - ceiling.exponent
        # the raw window estimate, before type_of clamps it to ||A||
        estimate = estimate_type(sol.norms, default_window(sol.depth))
        from_estimate = radius_from_sigma(estimate.sigma, p)
        tally.check(
            from_estimate.is_unbounded or from_estimate.exponent >= floor,
            f"instance {index} (p={p}): radius {from_estimate} from the window estimate "
            f"below p^({exponent_str(floor)})",
        )
        measured = radius_from_coefficients(sol.coefficients)
        tally.check(
            measured.is_unbounded or measured.exponent >= floor,
            f"instance {index} (p={p}): coefficient radius {measured} "
            f"below p^({exponent_str(floor)})",
        )
    return tally.result()


SUITES: Dict[Suite, Callable[[SuiteSettings], SuiteResult]] = {
    Suite.LEGENDRE: legendre_suite,
    Suite.ASYMPTOTICS: asymptotics_suite,
    Suite.RADIUS_LAW: radius_law_suite,
    Suite.ORACLE: oracle_suite,
    Suite.RESIDUAL: residual_suite,
    Suite.WELLPOSEDNESS: wellposedness_suite,
    Suite.NORM_BOUNDS: norm_bounds_suite,
    Suite.PDE: pde_suite,
    Suite.COROLLARY: corollary_suite,
}


def expand(suites: Sequence[Suite]) -> List[Suite]:
    """Replace `all` by every suite, keeping the requested order and dropping repeats."""
    ordered: List[Suite] = []
    for suite in suites:
        for item in SUITES if suite is Suite.ALL else (suite,):
            if item not in ordered:
                ordered.append(item)
    return ordered


def run_suite(suite: Suite, settings: Optional[SuiteSettings] = None) -> SuiteResult:
    if suite is Suite.ALL or suite not in SUITES:
        raise InvalidFieldValueError(
            field_name="suite", reason="Expected a single verification suite.", field_value=suite
        )
    settings = settings or SuiteSettings()
    logger.info("running suite %s (seed %s)", suite.value, settings.seed)
    result = SUITES[suite](settings)
    logger.info(
        "suite %s: %s, %d checks", suite.value, "pass" if result.passed else "fail", result.checked
    )
    return result


def run_suites(
    suites: Sequence[Suite], settings: Optional[SuiteSettings] = None
) -> List[SuiteResult]:
    """Run suites on a pool of `settings.workers` threads; results follow the input order."""
    settings = settings or SuiteSettings()
    ordered = expand(suites)
    with ThreadPoolExecutor(max_workers=max(1, settings.workers)) as pool:
        return list(pool.map(lambda suite: run_suite(suite, settings), ordered))
