"""
Exact rational reference computations.

Nothing in here touches p-adic types except `reduce_mod_pN`, the bridge used to compare
an exact answer with a p-adic one.
"""
import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy as sp

from .padic_arith import (
    PLUS_INFINITY,
    PadicNumber,
    Prime,
    Valuation,
    as_prime,
    exact_zero,
)

ExactRational = Fraction
"""Canonical rationals: gcd(numerator, denominator) = 1 and a positive denominator."""

RationalPolynomial = Dict[Tuple[int, ...], Fraction]


def rational_valuation(q: ExactRational, p) -> Valuation:
    """v_p(numerator) - v_p(denominator), PLUS_INFINITY for zero."""
    q = Fraction(q)
    if q == 0:
        return PLUS_INFINITY
    base = int(as_prime(p))
    return int(sp.multiplicity(base, abs(q.numerator))) - int(
        sp.multiplicity(base, q.denominator)
    )


def factorial_valuation_by_counting(n: int, p) -> int:
    """v_p(n!) as the sum of the multiplicities of p in 1, 2, ..., n."""
    base = int(as_prime(p))
    return sum(int(sp.multiplicity(base, k)) for k in range(2, n + 1))


def factorial_valuation_table(max_n: int, p) -> List[int]:
    """v_p(n!) for n = 0 ... max_n, accumulating the multiplicity of p in each factor."""
    base = int(as_prime(p))
    table = [0]
    for k in range(1, max_n + 1):
        table.append(table[-1] + (int(sp.multiplicity(base, k)) if k > 1 else 0))
    return table


def factorial_valuation_by_factorization(n: int, p) -> int:
    """v_p(n!) read off the prime factorization of n! itself."""
    return int(sp.multiplicity(int(as_prime(p)), math.factorial(n))) if n > 1 else 0


def _to_sympy(value) -> sp.Rational:
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _to_fraction(value) -> Fraction:
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def exact_series_partial_sum(
    A: Sequence[Sequence[Fraction]], y0: Sequence[Fraction], z: ExactRational, depth: int
) -> List[Fraction]:
    """sum_{k <= depth} A^k y0 z^k / k!, exactly."""
    matrix = sp.Matrix([[_to_sympy(a) for a in row] for row in A])
    vector = sp.Matrix([_to_sympy(y) for y in y0])
    point = _to_sympy(z)
    total = sp.zeros(len(y0), 1)
    term = vector
    for k in range(depth + 1):
        total += term * point ** k / sp.factorial(k)
        term = matrix * term
    return [_to_fraction(value) for value in total]


def exact_derivative_partial_sum(
    A: Sequence[Sequence[Fraction]], y0: Sequence[Fraction], z: ExactRational, depth: int
) -> List[Fraction]:
    """sum_{n <= depth - 1} (n + 1) c_{n+1} z^n with c_k = A^k y0 / k!, exactly."""
    matrix = sp.Matrix([[_to_sympy(a) for a in row] for row in A])
    point = _to_sympy(z)
    term = matrix * sp.Matrix([_to_sympy(y) for y in y0])
    total = sp.zeros(len(y0), 1)
    for n in range(depth):
        total += term * point ** n / sp.factorial(n)
        term = matrix * term
    return [_to_fraction(value) for value in total]


def reduce_mod_pN(q: ExactRational, p, precision: int) -> PadicNumber:
    """
    The image of q in Q_p known to `precision` digits: q = p^v * u with u a p-unit,
    and the unit reduced modulo p^precision.
    """
    prime: Prime = as_prime(p)
    q = Fraction(q)
    if q == 0:
        return exact_zero(prime)
    v = rational_valuation(q, prime)
    unit = q / Fraction(prime.p) ** v
    modulus = prime.p ** precision
    residue = unit.numerator * pow(unit.denominator, -1, modulus) % modulus
    return PadicNumber(prime, v, residue, precision)


def _polynomial(coefficients: RationalPolynomial, variables: int) -> sp.Poly:
    symbols = sp.symbols(f"x1:{variables + 1}")
    expression = sum(
        (
            _to_sympy(c) * sp.Mul(*[s ** a for s, a in zip(symbols, alpha)])
            for alpha, c in coefficients.items()
        ),
        sp.Integer(0),
    )
    return sp.Poly(expression, *symbols, domain="QQ")


def _coefficients(poly: sp.Poly) -> RationalPolynomial:
    return {
        tuple(int(a) for a in alpha): _to_fraction(c)
        for alpha, c in poly.terms()
        if c != 0
    }


def exact_partial_derivative(
    coefficients: RationalPolynomial, variables: int, j: int
) -> RationalPolynomial:
    """d/dx_j of a rational polynomial, 1-based j."""
    poly = _polynomial(coefficients, variables)
    return _coefficients(poly.diff(poly.gens[j - 1]))


def exact_product(
    f: RationalPolynomial, g: RationalPolynomial, variables: int
) -> RationalPolynomial:
    return _coefficients(_polynomial(f, variables) * _polynomial(g, variables))


def exp_partial_sum(z: ExactRational, depth: int) -> Fraction:
    """sum_{k <= depth} z^k / k!."""
    return sum((Fraction(z) ** k / math.factorial(k) for k in range(depth + 1)), Fraction(0))
