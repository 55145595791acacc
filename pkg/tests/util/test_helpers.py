"""Test data as functions and common assertion helper functions."""
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Sequence

from padic_cauchy import PadicConfig
from padic_cauchy.analytic_space import AnalyticSpace
from padic_cauchy.enums import ErrorCode
from padic_cauchy.errors import InvalidFieldValueError
from padic_cauchy.operators import MatrixOperator
from padic_cauchy.padic_arith import as_prime, from_int
from padic_cauchy.spaces import Vector


def stub_config(prime: int = 3, terms: int = 16) -> Dict[str, Any]:
    """Return a test configuration dictionary to be used when instantiating PadicConfig."""
    return dict(prime=prime, precision=20, terms=terms, epsilon="1/2", workers=1)


def stub_padic_config() -> PadicConfig:
    """Return a valid test PadicConfig object."""
    return PadicConfig(config=stub_config())


def integer_matrix(rows: Sequence[Sequence[int]], p: int) -> MatrixOperator:
    """An exact matrix with integer entries."""
    return MatrixOperator(
        as_prime(p), tuple(tuple(from_int(value, p) for value in row) for row in rows)
    )


def integer_vector(values: Sequence[int], p: int) -> Vector:
    return Vector(as_prime(p), tuple(from_int(value, p) for value in values))


def diagonal_p_instance(p: int = 3):
    """A = diag(p), y0 = (1): ||A^k y0|| = p^{-k}."""
    return integer_matrix([[p]], p), integer_vector([1], p)


def nilpotent_instance(p: int = 3):
    """A = [[0, 1], [0, 0]], y0 = (0, 1): y(z) = (z, 1)."""
    return integer_matrix([[0, 1], [0, 0]], p), integer_vector([0, 1], p)


def stub_space(p: int = 3, variables: int = 2, rho_exponent=Fraction(0)) -> AnalyticSpace:
    return AnalyticSpace(as_prime(p), variables, Fraction(rho_exponent), truncation_degree=16)


def nilpotent_problem() -> Dict[str, Any]:
    return dict(
        mode="ode",
        prime=3,
        precision=20,
        depth=8,
        matrix=[[0, 1], [0, 0]],
        initial=[0, 1],
        points=["1", "1/2"],
    )


def diagonal_problem() -> Dict[str, Any]:
    return dict(mode="analyze", prime=3, precision=20, depth=16, matrix=[[3]], initial=[1])


def transport_problem() -> Dict[str, Any]:
    return dict(
        mode="pde",
        prime=5,
        precision=20,
        depth=6,
        variables=1,
        rho_exponent=0,
        terms=[dict(beta=[1], coefficient="1")],
        initial="x1",
        points=["5"],
    )


def write_problem(directory: Path, data: Dict[str, Any], name: str = "problem.json") -> str:
    path = directory / name
    path.write_text(json.dumps(data))
    return str(path)


def entry_digits(vector: Vector) -> List[tuple]:
    return [entry.unit_digits for entry in vector.entries]


def invalid_field_value_error_assertions(error, field_name: str) -> None:
    """
    Helper test function that has common assertions pertaining to InvalidFieldValueError.

    :param error: The error to execute assertions on.
    :param str field_name: The field the error must name.
    :returns: None, only executes assertions.
    :rtype: None
    """
    assert type(error) is InvalidFieldValueError
    assert error.error_type == "validation"
    assert error.error_code == ErrorCode.INVALID_FIELD_VALUE.value
    assert error.field_name == field_name
