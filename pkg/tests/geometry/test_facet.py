"""Unit tests for support hyperplanes, facets and pivoting."""

import unittest
from fractions import Fraction

import numpy as np
import pytest

from quartic_hull.exceptions import DegenerateHullError, InvalidSupportError, PivotError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement
from quartic_hull.field.models import FieldParams
from quartic_hull.geometry.facet import (
    CertificateStatus,
    Ridge,
    SupportFunctional,
    facet_polytope,
    find_seed,
    pivot,
    to_off,
    trace_functional,
    verify_support,
)
from quartic_hull.lattice.order import IntegralLattice

P = FieldElement.parse

A1, A3, A4, A5, A6, A8, A9, A10 = (
    P("-2,0,6,3"),
    P("-1,0,3,2"),
    P("-1,0,4,2"),
    P("-1,1,2,1"),
    P("-1,2,0,0"),
    P("0,0,0,1"),
    P("0,1,0,0"),
    P("0,0,-1,2"),
)


class TestSupportFunctional(unittest.TestCase):
    """Test cases for parsing and normalizing functionals."""

    def test_parse_normalizes(self):
        """Rational input is scaled to a primitive integer vector."""
        f = SupportFunctional.parse("1,1/2,0,1;1")
        self.assertEqual(f.phi, (2, 1, 0, 2))
        self.assertEqual(f.level, 2)
        self.assertEqual(str(f), "(2,1,0,2;2)")
        self.assertEqual(SupportFunctional.parse("(4,4,0,4;4)"), SupportFunctional.parse("1,1,0,1;1"))

    def test_parse_errors(self):
        with self.assertRaises(ValueError):
            SupportFunctional.parse("1,1,0,1")
        with self.assertRaises(ValueError):
            SupportFunctional.parse("1,1;1")
        with self.assertRaises(InvalidSupportError):
            SupportFunctional.parse("1,1,0,1;0")

    def test_value(self):
        f = SupportFunctional.parse("8,5,2,2;2")
        self.assertEqual(f.value(A10), 2)
        self.assertEqual(f.value(A3), 2)
        self.assertEqual(f.key, (8, 5, 2, 2, 2))


class TestFacets(unittest.TestCase):
    """Test cases for the boundary of x^4 - 4x^2 + 1 with Z^4."""

    def setUp(self):
        """Set up the field and its integers."""
        self.field = FieldContext(FieldParams(two_a=4, b=1))
        self.lattice = IntegralLattice.standard("k1")

    def _octahedron(self):
        return facet_polytope((1, 1, 0, 1), 1, self.lattice, self.field)

    def test_valid_support(self):
        cert = verify_support((1, 1, 0, 1), 1, self.lattice, self.field)
        self.assertEqual(cert.status, CertificateStatus.VALID)
        self.assertTrue(cert.is_valid)
        self.assertEqual(len(cert.level_points), 9)
        self.assertTrue(self.field.is_strictly_positive(cert.dual))

    def test_lower_point(self):
        """k + l/2 + n = 1 has positive integers strictly below the level."""
        cert = verify_support((1, Fraction(1, 2), 0, 1), 1, self.lattice, self.field)
        self.assertEqual(cert.status, CertificateStatus.LOWER_POINT)
        self.assertIsNotNone(cert.witness)
        self.assertLess(cert.functional.value(cert.witness), cert.functional.level)
        self.assertTrue(self.field.is_strictly_positive(cert.witness))

    def test_unbounded_and_empty(self):
        unbounded = verify_support((0, -8, 0, -4), 1, self.lattice, self.field)
        self.assertEqual(unbounded.status, CertificateStatus.UNBOUNDED)
        empty = verify_support((0, 8, 0, 4), 2, self.lattice, self.field)
        self.assertEqual(empty.status, CertificateStatus.EMPTY_FACE)

    def test_octahedron(self):
        """Six unit vertices; A3, A5 and A7 are points of the facet but not vertices."""
        facet = self._octahedron()
        self.assertEqual(facet.polytope.face_vector, (6, 12, 8))
        self.assertEqual(set(facet.non_vertices), {A3, A5, P("-1,2,1,0")})
        for v in facet.vertices:
            self.assertEqual(self.field.norm(v), 1)
        self.assertEqual(len(facet.ridges()), 8)
        self.assertTrue(facet.contains_point(A5))
        self.assertFalse(facet.contains_point(A10))

    def test_tetrahedra(self):
        first = facet_polytope((8, 5, 2, 2), 2, self.lattice, self.field)
        self.assertEqual(first.polytope.face_vector, (4, 6, 4))
        self.assertEqual(set(first.vertices), {A1, A6, A8, A10})
        self.assertEqual(first.non_vertices, [A3])
        second = facet_polytope((2, 3, 0, 2), 2, self.lattice, self.field)
        self.assertIn(P("-4,-2,15,8"), second.vertices)
        self.assertIn(A4, second.vertices)

    def test_invalid_facets(self):
        with self.assertRaises(InvalidSupportError):
            facet_polytope((2, 1, 0, 2), 2, self.lattice, self.field)
        with self.assertRaises(DegenerateHullError):
            facet_polytope((0, 8, 0, 4), 4, self.lattice, self.field)

    def test_trace_functional(self):
        f = trace_functional(self.field)
        self.assertEqual(f, SupportFunctional.parse("0,2,0,1;1"))

    def test_transform_by_unit(self):
        """Multiplying by x^2 moves the octahedron to another facet."""
        facet = self._octahedron()
        moved = facet.transform(A9, self.field)
        self.assertEqual(moved.vertices, sorted(self.field.mul(A9, v) for v in facet.vertices))
        self.assertEqual(moved.polytope.face_vector, (6, 12, 8))
        cert = verify_support(moved.functional.phi, moved.functional.level, self.lattice, self.field)
        self.assertTrue(cert.is_valid)
        for v in moved.points:
            self.assertEqual(moved.functional.value(v), moved.functional.level)

    def test_pivot_to_tetrahedra(self):
        """Across A1 A6 A8 lies the first tetrahedron, across A1 A4 A8 the second."""
        facet = self._octahedron()
        expected = {
            frozenset({A1, A6, A8}): SupportFunctional.parse("8,5,2,2;2"),
            frozenset({A1, A4, A8}): SupportFunctional.parse("2,3,0,2;2"),
        }
        for ridge in facet.ridges():
            target = expected.get(frozenset(ridge.vertices))
            if target is not None:
                neighbour = pivot(facet, ridge, self.lattice, self.field)
                self.assertEqual(neighbour.functional, target)
                self.assertEqual(neighbour.polytope.face_vector, (4, 6, 4))

    def test_pivot_back_returns_the_facet(self):
        """Pivoting twice across the same ridge comes back to the start."""
        facet = self._octahedron()
        ridges = facet.ridges()
        for i in np.random.default_rng(5).choice(len(ridges), size=3, replace=False):
            neighbour = pivot(facet, ridges[i], self.lattice, self.field)
            back = pivot(neighbour, ridges[i], self.lattice, self.field)
            self.assertEqual(back.functional, facet.functional)
            self.assertEqual(sorted(back.vertices), sorted(facet.vertices))

    def test_unit_images_are_facets(self):
        facet = self._octahedron()
        rng = np.random.default_rng(6)
        for i, j in rng.integers(-1, 2, size=(3, 2)):
            u = self.field.mul(self.field.power(A9, int(i)), self.field.power(A10, int(j)))
            moved = facet.transform(u, self.field)
            self.assertEqual(moved.polytope.face_vector, facet.polytope.face_vector)
            cert = verify_support(moved.functional.phi, moved.functional.level, self.lattice, self.field)
            self.assertTrue(cert.is_valid, str(u))
            self.assertEqual(sorted(cert.level_points), sorted(moved.points))

    def test_pivot_needs_a_ridge(self):
        facet = self._octahedron()
        with self.assertRaises(PivotError):
            pivot(facet, Ridge(vertices=(A1, A9, A10)), self.lattice, self.field)

    def test_to_off(self):
        text = to_off(self._octahedron())
        lines = text.splitlines()
        self.assertEqual(lines[0], "OFF")
        self.assertEqual(lines[1], "6 8 12")
        self.assertEqual(len(lines), 2 + 6 + 8)
        self.assertTrue(all(line.startswith("3 ") for line in lines[8:]))

    @pytest.mark.slow
    def test_find_seed(self):
        seed = find_seed(self.lattice, self.field)
        self.assertEqual(seed.polytope.dimension, 3)
        cert = verify_support(seed.functional.phi, seed.functional.level, self.lattice, self.field)
        self.assertTrue(cert.is_valid)


if __name__ == "__main__":
    unittest.main()
