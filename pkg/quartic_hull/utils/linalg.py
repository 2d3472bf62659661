"""Exact linear algebra over the rationals, plus integer lattice reductions.

Callers see plain lists of ``Fraction`` rows; the work is delegated to sympy's
``DomainMatrix`` over ``QQ`` and ``ZZ``. ``lll_reduce`` takes a floating basis,
scales it to integers and returns the exact unimodular transformation.
"""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.normalforms import hermite_normal_form as _hnf

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]
Vector = List[Fraction]

# Bits kept when a floating basis is rounded onto the integers for LLL.
LLL_SCALE_BITS = 40


def _qq(m: Sequence[Sequence]) -> DomainMatrix:
    rows = [[QQ(f.numerator, f.denominator) for f in map(Fraction, row)] for row in m]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), QQ)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _rows(dm: DomainMatrix) -> Matrix:
    return [[_from_qq(x) for x in row] for row in dm.to_list()]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return _rows(DomainMatrix.eye(n, QQ))


def transpose(m: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    return _rows(_qq(a) * _qq(b))


def mat_vec(m: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [row[0] for row in mat_mul(m, [[x] for x in v])]


def vec_mat(v: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> Vector:
    return mat_mul([list(v)], m)[0]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(u, v)), Fraction(0))


def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    return _from_qq(_qq(m).det())


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    if not m:
        return 0
    return _qq(m).rank()


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    """Inverse of a square rational matrix.

    Raises:
        ZeroDivisionError: if the matrix is singular
    """
    try:
        return _rows(_qq(m).to_dense().inv())
    except DMNonInvertibleMatrixError as e:
        raise ZeroDivisionError("singular matrix") from e


def solve(m: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Vector:
    return mat_vec(inverse(m), b)


def nullspace(m: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """Basis of {x : m x = 0}, one vector per free column."""
    return _rows(_qq(m).to_dense().nullspace())


def common_denominator(values: Sequence[Fraction]) -> int:
    return reduce(lambda acc, x: acc * x.denominator // gcd(acc, x.denominator), map(Fraction, values), 1)


def primitive_integer_vector(values: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = common_denominator(values)
    ints = [int(Fraction(x) * den) for x in values]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return ints
    return [x // g for x in ints]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row Hermite normal form of an integer matrix; zero rows are dropped.

    The returned rows generate the same Z-module as the input rows.
    """
    if not rows or not any(any(r) for r in rows):
        return []
    ints = [[ZZ(int(x)) for x in r] for r in rows]
    # sympy reduces columns, so the row module is handled through the transpose
    columns = DomainMatrix(ints, (len(ints), len(ints[0])), ZZ).transpose().to_dense()
    return [[int(x) for x in row] for row in _hnf(columns).transpose().to_list() if any(row)]


def lll_reduce(basis: np.ndarray, delta: float = 0.75) -> List[List[int]]:
    """LLL-reduce the rows of a real basis.

    Args:
        basis: n x dim array of linearly independent rows
        delta: Lovasz condition parameter

    Returns:
        The integer unimodular matrix U (as nested lists) with U @ basis reduced

    Raises:
        ValueError: if the rows are dependent after rounding
    """
    b = np.array(basis, dtype=float)
    scale = 2.0**LLL_SCALE_BITS / max(float(np.max(np.abs(b))), 1e-300)
    ints = [[ZZ(int(round(x * scale))) for x in row] for row in b]
    lattice = DomainMatrix(ints, b.shape, ZZ).to_dense()
    if lattice.to_field().rank() < b.shape[0]:
        raise ValueError("basis rows are dependent at %d bits" % LLL_SCALE_BITS)
    ratio = Fraction(delta).limit_denominator(1000)
    _, transform = lattice.lll_transform(delta=QQ(ratio.numerator, ratio.denominator))
    u = [[int(x) for x in row] for row in transform.to_list()]
    logger.debug("LLL transform %s", u)
    return u
