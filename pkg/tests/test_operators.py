"""Tests for matrix and differential operators."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_cauchy.errors import (
    DimensionMismatchError,
    InvalidFieldValueError,
    SpaceMismatchError,
)
from padic_cauchy.operators import (
    DifferentialOperator,
    MatrixOperator,
    apply,
    norm_witness,
    operator_norm_bound,
    power_apply,
)
from padic_cauchy.padic_arith import LogNorm, from_int

from .util import integer_matrix, integer_vector, stub_space

small_matrices = st.integers(1, 3).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n
    )
)


class TestMatrixOperator:
    def test_apply(self) -> None:
        A = integer_matrix([[1, 2], [3, 4]], 5)
        image = apply(A, integer_vector([1, 1], 5))
        assert [x.to_fraction() for x in image] == [3, 7]

    def test_operator_norm_is_the_largest_entry(self) -> None:
        assert operator_norm_bound(integer_matrix([[9, 3], [0, 18]], 3)) == LogNorm(-1)
        assert operator_norm_bound(MatrixOperator.zero(3, 2)) == LogNorm.zero()

    def test_norm_witness_attains_the_norm(self) -> None:
        A = integer_matrix([[9, 3], [0, 18]], 3)
        e = norm_witness(A)
        assert [x.to_fraction() for x in e] == [0, 1]
        assert apply(A, e).norm() == operator_norm_bound(A)

    @settings(max_examples=50)
    @given(small_matrices, st.sampled_from([2, 3, 5]))
    def test_norm_bounds_every_image(self, rows, p: int) -> None:
        A = integer_matrix(rows, p)
        x = integer_vector([1 + i for i in range(len(rows))], p)
        assert apply(A, x).norm() <= operator_norm_bound(A) * x.norm()

    def test_structure(self) -> None:
        assert integer_matrix([[0, 1], [0, 0]], 3).is_strictly_upper_triangular
        assert integer_matrix([[2, 0], [0, 3]], 3).is_diagonal
        assert not integer_matrix([[2, 0], [1, 3]], 3).is_upper_triangular

    def test_square_matrices_only(self) -> None:
        with pytest.raises(DimensionMismatchError):
            MatrixOperator.from_rationals([[1, 2]], 3, 10)

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(DimensionMismatchError):
            apply(MatrixOperator.identity(3, 2), integer_vector([1], 3))

    def test_power_apply(self) -> None:
        A = integer_matrix([[3]], 3)
        assert power_apply(A, integer_vector([1], 3), 4).norm() == LogNorm(-4)
        with pytest.raises(InvalidFieldValueError):
            power_apply(A, integer_vector([1], 3), -1)


class TestDifferentialOperator:
    def test_max_order_defaults_to_the_dimension(self) -> None:
        space = stub_space()
        one = space.constant(from_int(1, 3))
        assert DifferentialOperator(space, {(1, 0): one}).max_order == 2
        with pytest.raises(InvalidFieldValueError):
            DifferentialOperator(space, {(2, 1): one})

    def test_apply(self) -> None:
        space = stub_space()
        x1 = space.variable(1)
        # x1 * d/dx1 + d/dx2
        A = DifferentialOperator(
            space, {(1, 0): x1, (0, 1): space.constant(from_int(1, 3))}
        )
        f = space.from_rationals({(2, 0): 1, (0, 1): 1}, 10)
        expected = space.from_rationals({(2, 0): 2, (0, 0): 1}, 10)
        assert apply(A, f).agrees_with(expected)

    def test_norm_bound_divides_by_rho(self) -> None:
        space = stub_space(rho_exponent=Fraction(-1))
        A = DifferentialOperator(space, {(1, 1): space.constant(from_int(9, 3))})
        assert operator_norm_bound(A) == LogNorm(0)

    def test_coefficients_from_another_space(self) -> None:
        with pytest.raises(SpaceMismatchError):
            DifferentialOperator(stub_space(), {(1, 0): stub_space(p=5).zero()})

    def test_zero_terms_vanish(self) -> None:
        space = stub_space()
        assert DifferentialOperator(space, {(1, 0): space.zero()}).is_zero

    @settings(max_examples=30)
    @given(st.integers(-1, 1), st.integers(0, 6), st.integers(0, 6))
    def test_norm_bounds_monomial_images(self, rho: int, a: int, b: int) -> None:
        space = stub_space(rho_exponent=rho)
        A = DifferentialOperator(
            space,
            {(1, 0): space.constant(from_int(3, 3)), (0, 1): space.variable(1)},
        )
        f = space.monomial((a, b), from_int(1, 3))
        assert apply(A, f).norm() <= operator_norm_bound(A) * f.norm()
