from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from quartic_hull.exceptions import DegenerateHullError
from quartic_hull.field.element import FieldElement
from quartic_hull.geometry.hull import drop_index, hull3, hull_2d


def _points(rows):
    return [FieldElement(*row) for row in rows]


@pytest.fixture
def cube():
    """Corners of the unit cube in n = 1 plus its centre."""
    corners = [(k, l, m, 1) for k, l, m in product((0, 2), repeat=3)]
    return _points(corners + [(1, 1, 1, 1)])


class TestHull:
    """Test suite for exact 3-dimensional hulls inside a hyperplane."""

    def test_cube(self, cube):
        poly = hull3(cube, (0, 0, 0, 1))
        assert poly.dimension == 3
        assert poly.face_vector == (8, 12, 6)
        assert poly.face_sizes() == [4] * 6
        assert poly.non_vertices == [FieldElement(1, 1, 1, 1)]
        assert poly.euler_characteristic == 2
        assert poly.dropped == 3

    def test_cube_containment(self, cube):
        poly = hull3(cube, (0, 0, 0, 1))
        assert poly.contains_internal(FieldElement(1, Fraction(1, 2), 2, 1))
        assert not poly.contains_internal(FieldElement(3, 1, 1, 1))

    def test_faces_are_oriented_outwards(self, cube):
        """Each face's plane holds its own vertices with equality."""
        poly = hull3(cube, (0, 0, 0, 1))
        for face, (normal, offset) in zip(poly.faces, poly.planes):
            for i in face:
                p = poly.internal_point(poly.vertices[i])
                assert sum(n * x for n, x in zip(normal, p)) == offset

    def test_tetrahedron_with_edge_point(self):
        """A midpoint on an edge is a point of the facet but not a vertex."""
        rows = [(0, 0, 0, 1), (2, 0, 0, 1), (0, 2, 0, 1), (0, 0, 2, 1), (1, 0, 0, 1)]
        poly = hull3(_points(rows))
        assert poly.face_vector == (4, 6, 4)
        assert poly.non_vertices == [FieldElement(1, 0, 0, 1)]
        assert all(len(f) == 3 for f in poly.faces)

    def test_lower_dimensions(self):
        square = _points([(0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (1, 1, 0, 1)])
        assert hull3(square, (0, 0, 0, 1)).face_vector == (4, 4, 1)
        segment = hull3(_points([(0, 0, 0, 1), (1, 0, 0, 1), (2, 0, 0, 1)]), (0, 0, 0, 1))
        assert segment.dimension == 1
        assert segment.non_vertices == [FieldElement(1, 0, 0, 1)]
        assert hull3([FieldElement.one()], (0, 0, 0, 1)).dimension == 0

    def test_degenerate_inputs(self):
        with pytest.raises(DegenerateHullError):
            hull3([])
        simplex = _points([(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
        with pytest.raises(DegenerateHullError):
            hull3(simplex)

    def test_drop_index(self):
        assert drop_index((1, 1, 0, 1)) == 0
        assert drop_index((8, 5, 2, 2)) == 0
        assert drop_index((2, 2, 1, -3)) == 3

    def test_hull_2d(self):
        """Interior and collinear boundary points are dropped."""
        points = [(0, 0), (2, 0), (1, 0), (2, 2), (0, 2), (1, 1)]
        assert sorted(hull_2d(points)) == [0, 1, 3, 4]
        assert hull_2d([(0, 0), (0, 0)]) == [0]

    def test_grid_cube_has_six_faces(self):
        """All 125 points of a 5x5x5 grid: only the 8 corners are vertices."""
        grid = _points([(k, l, m, 1) for k, l, m in product(range(5), repeat=3)])
        poly = hull3(grid, (0, 0, 0, 1))
        assert poly.face_vector == (8, 12, 6)
        assert len(poly.non_vertices) == 117

    def test_random_point_clouds(self):
        """Every plane supports every point and touches a face of at least 3 vertices."""
        rng = np.random.default_rng(20240611)
        for _ in range(5):
            rows = {tuple(int(x) for x in rng.integers(-6, 7, size=3)) + (1,) for _ in range(40)}
            poly = hull3(_points(sorted(rows)), (0, 0, 0, 1))
            assert poly.dimension == 3
            assert poly.euler_characteristic == 2
            internal = [poly.internal_point(v) for v in poly.vertices + poly.non_vertices]
            for face, (normal, offset) in zip(poly.faces, poly.planes):
                assert len(face) >= 3
                assert all(sum(n * x for n, x in zip(normal, p)) <= offset for p in internal)
            for i in range(len(poly.vertices)):
                assert sum(i in face for face in poly.faces) >= 3
