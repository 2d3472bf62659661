from fractions import Fraction

import pytest

from quartic_hull.exceptions import UnboundedSlabError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement
from quartic_hull.field.models import FieldParams
from quartic_hull.lattice.enumeration import (
    brute_force_slab,
    coordinate_duals,
    enumerate_slab,
    evaluate_functional,
    orthant_box_vertices,
    points_on_level,
    reduced_basis,
    slab_vertices,
)
from quartic_hull.lattice.order import IntegralLattice

OCTAHEDRON_POINTS = [
    "-2,0,6,3",
    "-2,3,2,0",
    "-1,0,3,2",
    "-1,0,4,2",
    "-1,1,2,1",
    "-1,2,0,0",
    "-1,2,1,0",
    "0,0,0,1",
    "0,1,0,0",
]


@pytest.fixture
def k1():
    """x^4 - 4x^2 + 1 with its integers Z[x]."""
    return FieldContext(FieldParams(two_a=4, b=1)), IntegralLattice.standard("k1")


class TestEnumeration:
    """Test suite for certified slab enumeration."""

    def test_octahedron_slab(self, k1):
        """k + l + n <= 1 holds exactly nine positive integers, all on the level."""
        field, lattice = k1
        slab = enumerate_slab((1, 1, 0, 1), 1, lattice, field)
        expected = {FieldElement.parse(p) for p in OCTAHEDRON_POINTS}
        assert set(slab.on_level()) == expected
        assert slab.below_level() == []
        assert slab.scan is not None and slab.scan.candidates >= len(expected)

    def test_brute_force_agrees(self, k1):
        field, lattice = k1
        fast = enumerate_slab((1, 1, 0, 1), 1, lattice, field).points
        slow = brute_force_slab((1, 1, 0, 1), 1, lattice, field)
        assert set(fast) == set(slow)

    def test_trace_slab(self, k1):
        """Tr(v) >= 4 on positive integers with equality only at 1."""
        field, lattice = k1
        assert enumerate_slab((0, 8, 0, 4), 4, lattice, field).points == [FieldElement.one()]
        assert points_on_level((0, 8, 0, 4), 4, lattice, field) == [FieldElement.one()]

    def test_points_satisfy_the_slab(self, k1):
        field, lattice = k1
        for v in enumerate_slab((8, 5, 2, 2), 2, lattice, field).points:
            assert evaluate_functional((8, 5, 2, 2), v) <= 2
            assert field.is_strictly_positive(v)

    def test_unbounded_slab(self, k1):
        """-Tr has dual element -1, which is not totally positive."""
        field, lattice = k1
        with pytest.raises(UnboundedSlabError):
            enumerate_slab((0, -8, 0, -4), 1, lattice, field)

    def test_nonpositive_level_is_empty(self, k1):
        field, lattice = k1
        assert enumerate_slab((0, 8, 0, 4), 0, lattice, field).points == []

    def test_orthant_box(self):
        corners = orthant_box_vertices((1, -1, 1, 1), 4)
        assert len(corners) == 16
        assert all(c[1] < 0 for c in corners)
        assert min(c[0] for c in corners) == Fraction(1, 4)
        assert max(c[0] for c in corners) == 4

    def test_coordinate_duals(self, k1):
        """Tr(w_j * r_k) is the Kronecker delta over a reduced basis."""
        field, lattice = k1
        rows = reduced_basis(lattice, field)
        duals = coordinate_duals(rows, field)
        for j, w in enumerate(duals):
            assert [field.trace(field.mul(w, r)) for r in rows] == [int(j == k) for k in range(4)]

    def test_slab_vertices_enclose_the_simplex_corners(self, k1):
        field, _ = k1
        lam = FieldElement.one()
        vertices = slab_vertices(lam, Fraction(3), field)
        assert len(vertices) == 5
        for i in range(4):
            corner = vertices[i + 1][i]
            assert float(corner.a) <= 3 <= float(corner.b)

    @pytest.mark.parametrize("two_a, b, level", [(49, 49, 16), (125, 125, 12), (85, 85, 10)])
    def test_brute_force_agrees_on_large_fields(self, two_a, b, level):
        """Trace slabs of Z[x]: the reduced scan loses nothing against the raw basis."""
        field = FieldContext(FieldParams(two_a=two_a, b=b))
        lattice = IntegralLattice.standard()
        trace = (0, 2 * two_a, 0, 4)
        fast = enumerate_slab(trace, level, lattice, field).points
        slow = brute_force_slab(trace, level, lattice, field)
        assert set(fast) == set(slow)
        assert FieldElement.one() in fast
        assert FieldElement(0, 0, 0, 2) in fast
        for v in fast:
            assert field.trace(v) <= level
