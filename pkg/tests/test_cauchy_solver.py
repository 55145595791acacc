"""Tests for the series solution of y' = Ay over Q_p."""
from fractions import Fraction

import pytest

from padic_cauchy.cauchy_solver import (
    build_solution,
    derivative_at_origin,
    evaluate,
    evaluate_derivative,
    first_shell,
    is_entire,
    power_at_most,
    radius_from_coefficients,
    radius_from_sigma,
    residual,
    residual_check,
    solve_rational_ode,
    tail_bound,
    tail_soundness,
    wellposedness_check,
    working_precision,
)
from padic_cauchy.enums import GrowthSource, TypeMethod
from padic_cauchy.errors import (
    InsufficientDepthError,
    InvalidFieldValueError,
    OutsideDiskError,
    PrimeMismatchError,
)
from padic_cauchy.oracle import exp_partial_sum
from padic_cauchy.padic_arith import (
    PLUS_INFINITY,
    LogNorm,
    agrees_with,
    exact_rational,
    from_int,
)

from .util import diagonal_p_instance, integer_vector, nilpotent_instance


@pytest.fixture
def diagonal_solution():
    A, y0 = diagonal_p_instance()
    return build_solution(A, y0, 16)


class TestNilpotent:
    def test_series_terminates(self) -> None:
        A, y0 = nilpotent_instance()
        sol = build_solution(A, y0, 8)
        assert sol.norms.eventually_zero
        assert sol.alpha_cert.source is GrowthSource.EVENTUALLY_ZERO
        assert is_entire(sol)

    def test_evaluates_everywhere(self) -> None:
        A, y0 = nilpotent_instance()
        sol = build_solution(A, y0, 8)
        for z in (from_int(5, 3), exact_rational(1, 27, 3)):
            result = evaluate(sol, z)
            assert [x.to_fraction() for x in result.value] == [z.to_fraction(), 1]
            assert result.tail.bound.is_zero

    def test_radius_from_vanishing_coefficients(self) -> None:
        A, y0 = nilpotent_instance()
        assert radius_from_coefficients(build_solution(A, y0, 8).coefficients).is_unbounded


class TestDiagonal:
    def test_type_and_radius(self, diagonal_solution) -> None:
        assert diagonal_solution.sigma.sigma == LogNorm(-1)
        assert diagonal_solution.sigma.method is TypeMethod.EXACT_CLOSED_FORM
        assert diagonal_solution.radius == LogNorm(Fraction(1, 2))
        assert not is_entire(diagonal_solution)

    def test_growth_model_prefers_the_operator_norm(self, diagonal_solution) -> None:
        model = diagonal_solution.alpha_cert
        assert model.source is GrowthSource.OPERATOR_NORM
        assert model.alpha == LogNorm(-1)
        assert model.constant == LogNorm.one()

    def test_evaluate_matches_the_exponential(self, diagonal_solution) -> None:
        result = evaluate(diagonal_solution, from_int(1, 3))
        assert result.tail.bound == LogNorm(Fraction(-17, 2))
        value = result.value.entries[0]
        assert value.absolute_precision == 9
        exact = exp_partial_sum(Fraction(3), 16)
        assert agrees_with(value, exact_rational(exact.numerator, exact.denominator, 3))

    def test_outside_the_disk(self, diagonal_solution) -> None:
        with pytest.raises(OutsideDiskError):
            evaluate(diagonal_solution, exact_rational(1, 3, 3))

    def test_prime_mismatch(self, diagonal_solution) -> None:
        with pytest.raises(PrimeMismatchError):
            evaluate(diagonal_solution, from_int(1, 5))

    def test_radius_from_coefficients_is_close(self, diagonal_solution) -> None:
        radius = radius_from_coefficients(diagonal_solution.coefficients)
        assert abs(radius.exponent - Fraction(1, 2)) <= Fraction(1, 8)

    def test_derivatives_at_the_origin(self, diagonal_solution) -> None:
        for order in range(4):
            check = derivative_at_origin(diagonal_solution, order)
            assert check.agrees
            assert check.value.entries[0].to_fraction() == 3 ** order

    def test_derivative_series(self, diagonal_solution) -> None:
        derivative = evaluate_derivative(diagonal_solution, from_int(0, 3), 2)
        assert derivative.entries[0].to_fraction() == 9
        with pytest.raises(InsufficientDepthError):
            evaluate_derivative(diagonal_solution, from_int(0, 3), 17)

    def test_residual(self, diagonal_solution) -> None:
        z = from_int(1, 3)
        check = residual_check(diagonal_solution, z)
        assert check.residual == LogNorm(-11)
        assert check.bound == LogNorm(Fraction(-17, 2))
        assert check.holds
        assert residual(diagonal_solution, z) == LogNorm(-11)

    def test_tail_soundness(self) -> None:
        A, y0 = diagonal_p_instance()
        deep = build_solution(A, y0, 26)
        check = tail_soundness(deep, from_int(1, 3), 16)
        assert check.difference == LogNorm(-10)
        assert check.holds
        with pytest.raises(InsufficientDepthError):
            tail_soundness(deep, from_int(1, 3), 20)

    def test_tail_shrinks_with_the_point(self, diagonal_solution) -> None:
        near = tail_bound(diagonal_solution, from_int(3, 3)).bound
        far = tail_bound(diagonal_solution, from_int(1, 3)).bound
        assert near < far


class TestSolveRationalOde:
    def test_working_precision(self) -> None:
        assert working_precision(20, 16, 3) == 26

    def test_unit_operator(self) -> None:
        sol = solve_rational_ode([[Fraction(1, 2)]], [1], 3, 10, 8)
        assert sol.radius == LogNorm(Fraction(-1, 2))
        assert evaluate(sol, from_int(3, 3)).tail.bound.is_finite
        with pytest.raises(OutsideDiskError):
            evaluate(sol, from_int(1, 3))

    def test_depth_must_be_at_least_four(self) -> None:
        A, y0 = diagonal_p_instance()
        with pytest.raises(InvalidFieldValueError):
            build_solution(A, y0, 3)


class TestRadiusLaw:
    def test_radius_from_sigma(self) -> None:
        assert radius_from_sigma(LogNorm(-1), 3) == LogNorm(Fraction(1, 2))
        assert radius_from_sigma(LogNorm(0), 2) == LogNorm(-1)
        assert radius_from_sigma(LogNorm.zero(), 5).is_unbounded

    def test_power_at_most(self) -> None:
        assert not power_at_most(3, Fraction(-1, 2), Fraction(1, 2))
        assert power_at_most(3, Fraction(-3, 2), Fraction(1, 2))


class TestWellposedness:
    def test_first_shell(self) -> None:
        assert first_shell(3, LogNorm(Fraction(1, 2)), Fraction(1, 2)) == 1

    def test_small_perturbation(self) -> None:
        A, y0 = diagonal_p_instance()
        report = wellposedness_check(A, y0, [integer_vector([28], 3)], "1/2", 24)
        assert report.delta == LogNorm(Fraction(1, 2))
        assert report.shells == (1, 2, 3, 4)
        assert all(row.rhs == LogNorm(-3) for row in report.rows)
        assert all(row.lhs == LogNorm(-3) for row in report.rows)
        assert report.worst_margin == 0
        assert all(row.margin == 0 for row in report.rows)
        assert report.holds

    def test_identical_start(self) -> None:
        A, y0 = diagonal_p_instance()
        report = wellposedness_check(A, y0, [y0], "1/4", 16, shells=2)
        assert all(row.lhs.is_zero for row in report.rows)
        assert all(row.margin == PLUS_INFINITY for row in report.rows)
        assert report.holds

    def test_epsilon_range(self) -> None:
        A, y0 = diagonal_p_instance()
        with pytest.raises(InvalidFieldValueError):
            wellposedness_check(A, y0, [y0], "3/2", 16)
