from fractions import Fraction

import numpy as np
import pytest
from sympy import Matrix

from quartic_hull.utils.linalg import (
    det,
    hermite_normal_form,
    identity,
    inverse,
    lll_reduce,
    mat_mul,
    nullspace,
    primitive_integer_vector,
    rank,
    solve,
    to_fraction_matrix,
)


class TestExactLinearAlgebra:
    """Test suite for fraction-exact matrix helpers."""

    def test_det_and_inverse(self):
        m = to_fraction_matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
        assert det(m) == 18
        assert mat_mul(m, inverse(m)) == identity(3)

    def test_singular(self):
        m = to_fraction_matrix([[1, 2], [2, 4]])
        assert det(m) == 0
        assert rank(m) == 1
        with pytest.raises(ZeroDivisionError):
            inverse(m)

    def test_nullspace(self):
        m = to_fraction_matrix([[1, 1, 0], [0, 1, 1]])
        (vec,) = nullspace(m)
        assert [sum(a * b for a, b in zip(row, vec)) for row in m] == [0, 0]
        assert any(vec)

    def test_primitive_integer_vector(self):
        assert primitive_integer_vector([Fraction(1, 2), Fraction(1, 4), 0, Fraction(1, 2)]) == [2, 1, 0, 2]
        assert primitive_integer_vector([0, 0]) == [0, 0]

    def test_hermite_normal_form(self):
        rows = [[2, 0], [0, 2], [1, 1]]
        hnf = hermite_normal_form(rows)
        assert len(hnf) == 2
        assert abs(hnf[0][0] * hnf[1][1] - hnf[0][1] * hnf[1][0]) == 2
        assert hermite_normal_form([[0, 0]]) == []

    def test_lll_is_unimodular(self):
        basis = np.array([[1.0, 0.0], [1000.0, 1.0]])
        u = lll_reduce(basis)
        assert abs(round(np.linalg.det(np.array(u, dtype=float)))) == 1
        reduced = np.array(u, dtype=float) @ basis
        assert max(np.linalg.norm(row) for row in reduced) < 2.0

    def test_nullspace_of_full_rank_is_empty(self):
        assert nullspace(identity(3)) == []

    def test_solve_matches_inverse(self):
        m = to_fraction_matrix([[1, 2], [3, 4]])
        assert solve(m, [Fraction(5), Fraction(6)]) == [Fraction(-4), Fraction(9, 2)]

    def test_hermite_normal_form_keeps_the_module(self):
        rows = [[4, 6, 0], [2, 0, 2], [6, 6, 2]]
        hnf = hermite_normal_form(rows)
        assert len(hnf) == 2
        # every input row is an integer combination of the reduced rows
        m = Matrix(hnf).T
        for row in rows:
            coeffs = m.pinv() * Matrix(row)
            assert all(c.is_integer for c in coeffs)
            assert m * coeffs == Matrix(row)

    def test_lll_rejects_dependent_rows(self):
        with pytest.raises(ValueError):
            lll_reduce(np.array([[1.0, 2.0], [2.0, 4.0]]))
