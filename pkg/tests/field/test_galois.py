"""Unit tests for root isolation, automorphisms and the trace dual."""

import unittest
from fractions import Fraction

import mpmath

from quartic_hull.exceptions import NotGaloisError
from quartic_hull.field.closed_forms import shintani_generator_image, shintani_params, shintani_vertices
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement
from quartic_hull.field.models import FieldParams
from quartic_hull.field.roots import isolate_roots, numeric_roots


class TestRoots(unittest.TestCase):
    """Test cases for root isolation."""

    def setUp(self):
        """Set up x^4 - 4x^2 + 1."""
        self.field = FieldContext(FieldParams(two_a=4, b=1), precision_bits=64)

    def test_intervals_are_ordered_and_contain_the_roots(self):
        """x1 > x2 > x3 = -x2 > x4 = -x1, each inside its interval."""
        intervals = self.field.roots.intervals
        x1 = mpmath.sqrt(2 + mpmath.sqrt(3))
        x2 = mpmath.sqrt(2 - mpmath.sqrt(3))
        for (lo, hi), r in zip(intervals, (x1, x2, -x2, -x1)):
            self.assertLessEqual(float(lo), float(r))
            self.assertGreaterEqual(float(hi), float(r))
        for (_, hi), (lo, _) in zip(intervals[1:], intervals[:-1]):
            self.assertLess(hi, lo)
        self.assertLessEqual(self.field.roots.width(), Fraction(1, 2**64))

    def test_coarse_intervals_are_disjoint(self):
        """At coarse precision the intervals still exclude 0 and each other."""
        for params in (FieldParams(two_a=4, b=1), FieldParams(two_a=125, b=125), FieldParams(two_a=5, b=5)):
            intervals = isolate_roots(params, Fraction(4)).intervals
            self.assertTrue(all(lo > 0 for lo, _ in intervals[:2]), params)
            self.assertTrue(all(hi < 0 for _, hi in intervals[2:]), params)
            for (lo_left, _), (_, hi_right) in zip(intervals[:-1], intervals[1:]):
                self.assertLess(hi_right, lo_left, params)
            for (lo, hi), r in zip(intervals, (Fraction(str(x)) for x in numeric_roots(params, 30))):
                self.assertTrue(lo <= r <= hi, params)

    def test_not_totally_real(self):
        """d <= 0 has no four real roots."""
        with self.assertRaises(NotGaloisError):
            isolate_roots(FieldParams(two_a=2, b=2), Fraction(1, 1024))


class TestGalois(unittest.TestCase):
    """Test cases for the Galois group of Klein and cyclic fields."""

    def setUp(self):
        """Set up one Klein and one cyclic field."""
        self.k1 = FieldContext(FieldParams(two_a=4, b=1))
        self.k2 = FieldContext(FieldParams(two_a=4, b=2))

    def test_klein_generators(self):
        """x -> x^3 - 4x sends x1 to x3; x -> -x reverses the roots."""
        sigma, tau = self.k1.automorphisms
        self.assertEqual(sigma.image_of_x, FieldElement(1, 0, -4, 0))
        self.assertEqual(self.k1.root_permutation(sigma), (2, 3, 0, 1))
        self.assertEqual(tau.image_of_x, FieldElement(0, 0, -1, 0))
        self.assertEqual(self.k1.root_permutation(tau), (3, 2, 1, 0))
        self.assertEqual(sigma.order, 2)
        self.assertEqual(tau.order, 2)
        self.assertEqual(str(sigma), "x -> x^3 - 4x")
        self.assertEqual(str(tau), "x -> -x")

    def test_cyclic_generator(self):
        """x -> x^3 - 3x has order 4 and sends x1 to x2."""
        (sigma,) = self.k2.automorphisms
        self.assertEqual(sigma.image_of_x, FieldElement(1, 0, -3, 0))
        self.assertEqual(sigma.order, 4)
        self.assertEqual(self.k2.root_permutation(sigma), (1, 3, 0, 2))

    def test_group_has_four_elements(self):
        """Identity first, all images distinct."""
        for field in (self.k1, self.k2):
            group = field.galois_group
            self.assertEqual(len(group), 4)
            self.assertEqual(group[0].image_of_x, FieldElement.generator())
            self.assertEqual(len({g.image_of_x for g in group}), 4)
        perms = {self.k1.root_permutation(g) for g in self.k1.galois_group}
        self.assertEqual(perms, {(0, 1, 2, 3), (2, 3, 0, 1), (3, 2, 1, 0), (1, 0, 3, 2)})

    def test_permutation_matches_numeric_values(self):
        """sigma(x) evaluated at x_i is numerically x_perm(i)."""
        for field in (self.k1, self.k2):
            roots = field.float_conjugates(FieldElement.generator())
            for sigma in field.galois_group:
                values = field.float_conjugates(sigma.image_of_x)
                perm = field.root_permutation(sigma)
                for i in range(4):
                    self.assertAlmostEqual(values[i], roots[perm[i]], places=9)

    def test_automorphisms_are_ring_maps(self):
        """sigma(uv) = sigma(u) sigma(v) and norms are preserved."""
        u = FieldElement.parse("-2,0,6,3")
        v = FieldElement.parse("-1,1,2,1")
        for sigma in self.k1.galois_group:
            lhs = self.k1.apply(sigma, self.k1.mul(u, v))
            rhs = self.k1.mul(self.k1.apply(sigma, u), self.k1.apply(sigma, v))
            self.assertEqual(lhs, rhs)
            self.assertEqual(self.k1.norm(self.k1.apply(sigma, v)), 9)

    def test_dual_element(self):
        """phi(v) = Tr(lambda v): the trace is dual to 1 and (28,0,8,0) to x."""
        self.assertEqual(self.k1.dual_element([0, 8, 0, 4]), FieldElement.one())
        self.assertEqual(self.k1.dual_element([28, 0, 8, 0]), FieldElement.generator())

    def test_non_galois_has_no_automorphisms(self):
        field = FieldContext(FieldParams(two_a=6, b=3))
        with self.assertRaises(NotGaloisError):
            _ = field.automorphisms


class TestClosedForms(unittest.TestCase):
    """Test cases for the closed-form family x^4 - (n^2+4)x^2 + n^2 + 4."""

    def test_generator_matches_closed_form(self):
        """The generator found by classification is x^3/n - (n^2+2)x/n."""
        for n in (1, 3):
            field = FieldContext(shintani_params(n))
            self.assertEqual(field.automorphisms[0].image_of_x, shintani_generator_image(n))
        self.assertEqual(shintani_generator_image(3), FieldElement(Fraction(1, 3), 0, Fraction(-11, 3), 0))

    def test_vertices_lie_on_the_level(self):
        """Every vertex satisfies 2k + 2l + m + n = 1."""
        for t in (0, 1, 2):
            for name, v in shintani_vertices(t).items():
                k, l, m, n = v.coords
                self.assertEqual(2 * k + 2 * l + m + n, 1, f"t={t} {name}")

    def test_first_member_vertices(self):
        """n = 1 gives the integral decahedron vertices."""
        vertices = shintani_vertices(0)
        self.assertEqual(vertices["B"], FieldElement(2, -2, -7, 8))
        self.assertEqual(vertices["D1"], FieldElement(-1, 2, 1, -2))
        field = FieldContext(shintani_params(1))
        for name in ("A", "A1", "C1"):
            self.assertEqual(field.norm(vertices[name]), 1, name)
        with self.assertRaises(ValueError):
            shintani_vertices(-1)

    def test_generator_identity(self):
        """y = -3x^3 + 5x satisfies y^4 - 125y^2 + 125 = 0 in x^4 - 5x^2 + 5."""
        field = FieldContext(shintani_params(1))
        y = FieldElement(-3, 0, 5, 0)
        self.assertTrue(field.evaluate_polynomial([1, 0, -125, 0, 125], y).is_zero())
        self.assertEqual(field.mul(y, y), FieldElement(0, 55, 0, -75))


if __name__ == "__main__":
    unittest.main()
