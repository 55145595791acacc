"""Bounded linear operators: matrices over Q_p and differential operators on A_rho."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .analytic_space import (
    AnalyticFunction,
    AnalyticSpace,
    MultiIndex,
    derivative,
    graded_lex_key,
    multiply,
    rho_norm,
)
from .errors import DimensionMismatchError, InvalidFieldValueError, SpaceMismatchError
from .padic_arith import (
    LogNorm,
    PadicNumber,
    Prime,
    Rational,
    as_prime,
    embed_rational,
    exact_zero,
    from_int,
    render,
    sum_padic,
)
from .spaces import Vector, vector_norm


@dataclass(frozen=True)
class MatrixOperator:
    prime: Prime
    entries: Tuple[Tuple[PadicNumber, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise InvalidFieldValueError(
                field_name="matrix", reason="A matrix needs at least one row.", field_value=[]
            )
        for row in rows:
            if len(row) != n:
                raise DimensionMismatchError(n, len(row))
            for entry in row:
                if entry.prime != self.prime:
                    raise SpaceMismatchError(
                        f"Entry over p={entry.p} in a {self.prime.p}-adic matrix"
                    )

    @classmethod
    def from_rationals(
        cls, rows: Sequence[Sequence[Rational]], p: Union[int, Prime], precision: int
    ) -> "MatrixOperator":
        prime = as_prime(p)
        return cls(
            prime,
            tuple(tuple(embed_rational(value, prime, precision) for value in row) for row in rows),
        )

    @classmethod
    def identity(cls, p: Union[int, Prime], n: int) -> "MatrixOperator":
        prime = as_prime(p)
        return cls(
            prime,
            tuple(
                tuple(from_int(1, prime) if i == j else exact_zero(prime) for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def zero(cls, p: Union[int, Prime], n: int) -> "MatrixOperator":
        prime = as_prime(p)
        return cls(prime, tuple(tuple(exact_zero(prime) for _ in range(n)) for _ in range(n)))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> PadicNumber:
        return self.entries[i][j]

    def _all_zero(self, condition) -> bool:
        n = self.dimension
        return all(
            self.entries[i][j].is_exact_zero
            for i in range(n)
            for j in range(n)
            if condition(i, j)
        )

    @property
    def is_zero(self) -> bool:
        return self._all_zero(lambda i, j: True)

    @property
    def is_diagonal(self) -> bool:
        return self._all_zero(lambda i, j: i != j)

    @property
    def is_upper_triangular(self) -> bool:
        return self._all_zero(lambda i, j: i > j)

    @property
    def is_strictly_upper_triangular(self) -> bool:
        return self._all_zero(lambda i, j: i >= j)

    def __call__(self, x: Vector) -> Vector:
        return apply(self, x)

    def render(self) -> str:
        return "[" + "; ".join(", ".join(render(e) for e in row) for row in self.entries) + "]"


@dataclass(frozen=True)
class DifferentialOperator:
    """
    f -> sum_beta a_beta D^beta f on A_rho.

    The order |beta| is capped by `max_order`, which defaults to the number of variables.
    """

    space: AnalyticSpace
    terms: Dict[MultiIndex, AnalyticFunction] = field(hash=False)
    max_order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_order is None:
            object.__setattr__(self, "max_order", self.space.variables)
        terms = dict()
        for beta, coefficient in self.terms.items():
            beta = tuple(beta)
            if len(beta) != self.space.variables or any(b < 0 for b in beta):
                raise InvalidFieldValueError(
                    field_name="beta",
                    reason=f"Multi-indices need {self.space.variables} nonnegative entries.",
                    field_value=list(beta),
                )
            if sum(beta) > self.max_order:
                raise InvalidFieldValueError(
                    field_name="beta",
                    reason=f"Order exceeds max_order {self.max_order}.",
                    field_value=list(beta),
                )
            if coefficient.space != self.space:
                raise SpaceMismatchError(f"Coefficient of D^{beta} lives in another space")
            if beta in terms:
                coefficient = terms[beta] + coefficient
            terms[beta] = coefficient
        object.__setattr__(
            self, "terms", {beta: a for beta, a in terms.items() if not a.is_exact_zero}
        )

    @property
    def prime(self) -> Prime:
        return self.space.prime

    @property
    def variables(self) -> int:
        return self.space.variables

    @property
    def rho_exponent(self) -> Fraction:
        return self.space.rho_exponent

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: graded_lex_key(t[0]))

    def __call__(self, f: AnalyticFunction) -> AnalyticFunction:
        return apply(self, f)

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({a.render()})*D^{list(beta)}" for beta, a in self.sorted_terms())


OperatorSpec = Union[MatrixOperator, DifferentialOperator]


def _apply_matrix(A: MatrixOperator, x) -> Vector:
    if not isinstance(x, Vector):
        raise SpaceMismatchError("A matrix operator acts on vectors")
    if x.prime != A.prime:
        raise SpaceMismatchError(f"Vector over p={x.prime.p} for a {A.prime.p}-adic matrix")
    if x.dimension != A.dimension:
        raise DimensionMismatchError(A.dimension, x.dimension)
    return Vector(
        A.prime,
        tuple(sum_padic((a * xj for a, xj in zip(row, x.entries)), A.prime) for row in A.entries),
    )


def _apply_differential(A: DifferentialOperator, f) -> AnalyticFunction:
    if not isinstance(f, AnalyticFunction):
        raise SpaceMismatchError("A differential operator acts on analytic functions")
    if f.space != A.space:
        raise SpaceMismatchError("Function and operator live in different analytic spaces")
    result = A.space.zero()
    for beta, coefficient in A.sorted_terms():
        result = result + multiply(coefficient, derivative(f, beta))
    return result


def apply(A: OperatorSpec, x):
    """
    Ax for a matrix and a vector, or sum_beta a_beta D^beta f for a differential operator.

    :param A: The operator.
    :param x: A Vector or an AnalyticFunction from the operator's space.
    :returns: The image, in the same space as x.
    """
    if isinstance(A, MatrixOperator):
        return _apply_matrix(A, x)
    return _apply_differential(A, x)


def operator_norm_bound(A: OperatorSpec) -> LogNorm:
    """
    The exact sup-norm operator norm of a matrix (its largest entry norm), or
    max_beta rho^{-|beta|} ||a_beta||_rho for a differential operator.
    """
    if isinstance(A, MatrixOperator):
        flat = tuple(e for row in A.entries for e in row)
        return vector_norm(Vector(A.prime, flat))
    bounds = [
        LogNorm(rho_norm(a).exponent - sum(beta) * A.rho_exponent)
        for beta, a in A.terms.items()
    ]
    return max(bounds, default=LogNorm.zero())


def norm_witness(A: MatrixOperator) -> Vector:
    """A basis vector e_j with ||A e_j|| = ||A||."""
    target = operator_norm_bound(A)
    n = A.dimension
    for j in range(n):
        column = Vector(A.prime, tuple(A.entries[i][j] for i in range(n)))
        if vector_norm(column) == target:
            return Vector.basis(A.prime, n, j)
    return Vector.basis(A.prime, n, 0)


def power_apply(A: OperatorSpec, x, k: int):
    """A^k x; k = 0 returns x."""
    if k < 0:
        raise InvalidFieldValueError(
            field_name="k", reason="Powers must be nonnegative.", field_value=k
        )
    for _ in range(k):
        x = apply(A, x)
    return x
