"""
Exact linear algebra over the rationals.

Thin adapters between ``fractions.Fraction`` rows and ``sympy.Matrix`` so the
rest of the package can stay in Fraction arithmetic while rank, nullspace,
solve and determinant come from sympy's exact elimination.
"""

from fractions import Fraction
from typing import List, Optional, Sequence

import sympy

from core.errors import VerificationError
from core.logging_config import get_logger

logger = get_logger(__name__)

Rows = Sequence[Sequence[Fraction | int]]


def to_sympy(value: Fraction | int) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    value = sympy.sympify(value)
    if not value.is_Rational:
        raise VerificationError(f"non-rational value {value} in an exact computation")
    return Fraction(int(value.p), int(value.q))


def matrix(rows: Rows, ncols: Optional[int] = None) -> sympy.Matrix:
    """Build a sympy matrix of Rationals; ``ncols`` is needed for zero rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return sympy.zeros(0, ncols or 0)
    return sympy.Matrix([[to_sympy(v) for v in r] for r in rows])


def rank(rows: Rows) -> int:
    """Exact rank; 0 for an empty matrix."""
    if not rows or not len(rows[0]):
        return 0
    return int(matrix(rows).rank())


def nullspace(rows: Rows, ncols: int) -> List[List[Fraction]]:
    """Basis of {v : rows . v = 0} in reduced echelon form."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    basis = matrix(rows).nullspace()
    return [[to_fraction(v) for v in vec] for vec in basis]


def determinant(rows: Rows) -> Fraction:
    return to_fraction(matrix(rows).det())


def inverse(rows: Rows) -> List[List[Fraction]]:
    inv = matrix(rows).inv()
    return [[to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def solve_unique(rows: Rows, rhs: Sequence[Fraction | int]) -> List[Fraction]:
    """
    Solve ``rows . x = rhs`` exactly.

    Raises:
        VerificationError: when the system is inconsistent or underdetermined
    """
    a = matrix(rows)
    b = sympy.Matrix([to_sympy(v) for v in rhs])
    try:
        solution, params = a.gauss_jordan_solve(b)
    except ValueError as exc:
        raise VerificationError(f"inconsistent linear system: {exc}") from exc
    if params.shape[0]:
        raise VerificationError(
            f"linear system has a {params.shape[0]}-dimensional solution space, expected a unique solution"
        )
    return [to_fraction(v) for v in solution]
