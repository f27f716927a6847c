"""
SymPy Exact Linear Algebra

Integer determinants and rational linear solves on sympy's DomainMatrix,
so no value ever passes through floating point.
"""

from fractions import Fraction
from typing import List, Sequence

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix


def _square(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    return n


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """
    Determinant of an integer matrix by fraction-free elimination.

    Args:
        rows: square matrix as nested sequences of ints

    Returns:
        Exact determinant
    """
    n = _square(rows)
    if n == 0:
        return 1
    matrix = DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (n, n), ZZ)
    return int(matrix.det())


def solve_rational(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[Fraction]:
    """
    Solve A x = b over the rationals.

    Args:
        rows: nonsingular square integer matrix A
        rhs: right-hand side b

    Returns:
        Exact solution x as Fractions
    """
    n = _square(rows)
    if len(rhs) != n:
        raise ValueError("right-hand side length does not match the matrix")
    a = DomainMatrix([[QQ(int(x)) for x in row] for row in rows], (n, n), QQ)
    b = DomainMatrix([[QQ(int(x))] for x in rhs], (n, 1), QQ)
    x = a.lu_solve(b).to_Matrix()
    return [Fraction(int(v.p), int(v.q)) for v in x]


def matrix_vector(rows: Sequence[Sequence[int]], vector: Sequence[int]) -> List[int]:
    """Exact product A·v."""
    n = _square(rows)
    a = DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (n, n), ZZ)
    v = DomainMatrix([[ZZ(int(x))] for x in vector], (n, 1), ZZ)
    return [int(value) for value in (a * v).to_Matrix()]
