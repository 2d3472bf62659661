"""Exact convex hulls of point sets lying in a hyperplane of K.

Points are mapped to internal coordinates by dropping one coordinate and
scaled to integers. Facet inequalities of 3-dimensional hulls come from cdd
in fraction mode; incidences, vertices and face cycles are then decided by
integer arithmetic.
"""

import logging
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import cdd
from pydantic import BaseModel, ConfigDict

from quartic_hull.exceptions import DegenerateHullError
from quartic_hull.field.element import FieldElement, Rational
from quartic_hull.utils.linalg import common_denominator, nullspace, rank

logger = logging.getLogger(__name__)

Point3 = Tuple[int, int, int]


def _sub(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _cross(a: Sequence[int], b: Sequence[int]) -> Point3:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def drop_index(phi: Sequence[Rational]) -> int:
    """Coordinate with the largest |phi_j|, the smallest index on ties."""
    mags = [abs(Fraction(p)) for p in phi]
    return mags.index(max(mags))


def internal_coordinates(v: FieldElement, dropped: int) -> Tuple[Fraction, Fraction, Fraction]:
    return tuple(c for i, c in enumerate(v.coords) if i != dropped)  # type: ignore[return-value]


def hull_2d(points: Sequence[Tuple[int, int]]) -> List[int]:
    """Indices of the strict convex hull vertices, counter-clockwise (monotone chain)."""
    order = sorted(range(len(points)), key=lambda i: points[i])
    unique: List[int] = []
    for i in order:
        if not unique or points[unique[-1]] != points[i]:
            unique.append(i)
    if len(unique) <= 2:
        return unique

    def turn(o: int, a: int, b: int) -> int:
        (ox, oy), (ax, ay), (bx, by) = points[o], points[a], points[b]
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)

    lower: List[int] = []
    for i in unique:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: List[int] = []
    for i in reversed(unique):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


class FaceLattice(BaseModel):
    """Vertices, edges and 2-faces of a polytope of dimension <= 3.

    ``faces`` are vertex-index cycles oriented counter-clockwise seen from
    outside; ``planes`` holds the matching outward (normal, offset) in the
    integer internal coordinates, so that n . p <= offset on the polytope.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    vertices: List[FieldElement]
    edges: List[Tuple[int, int]]
    faces: List[Tuple[int, ...]]
    planes: List[Tuple[Point3, int]]
    non_vertices: List[FieldElement]
    dimension: int
    dropped: int
    scale: int

    @property
    def face_vector(self) -> Tuple[int, int, int]:
        return (len(self.vertices), len(self.edges), len(self.faces))

    @property
    def euler_characteristic(self) -> int:
        v, e, f = self.face_vector
        return v - e + f

    def face_vertices(self, index: int) -> List[FieldElement]:
        return [self.vertices[i] for i in self.faces[index]]

    def face_sizes(self) -> List[int]:
        return sorted(len(f) for f in self.faces)

    def internal_point(self, v: FieldElement) -> Tuple[Fraction, ...]:
        return tuple(c * self.scale for c in internal_coordinates(v, self.dropped))

    def contains_internal(self, v: FieldElement) -> bool:
        """Point-in-polytope in internal coordinates (the caller checks the hyperplane)."""
        p = self.internal_point(v)
        if self.dimension < 3:
            return v in self.vertices or v in self.non_vertices
        return all(_dot(n, p) <= off for n, off in self.planes)


def _normalize_plane(normal: Point3, offset: int) -> Tuple[Point3, int]:
    g = 0
    for x in (*normal, offset):
        g = gcd(g, abs(x))
    return (tuple(x // g for x in normal), offset // g)  # type: ignore[return-value]


def _orient(cycle: List[int], pts: Sequence[Point3], normal: Point3) -> List[int]:
    if len(cycle) >= 3:
        a, b, c = (pts[i] for i in cycle[:3])
        if _dot(_cross(_sub(b, a), _sub(c, a)), normal) < 0:
            cycle = list(reversed(cycle))
    return cycle


def _polygon(indices: Sequence[int], pts: Sequence[Point3], normal: Point3) -> List[int]:
    """Strict convex cycle of coplanar points, oriented by ``normal``."""
    axis = [abs(x) for x in normal].index(max(abs(x) for x in normal))
    keep = [i for i in range(3) if i != axis]
    proj = [(pts[i][keep[0]], pts[i][keep[1]]) for i in indices]
    cycle = [indices[j] for j in hull_2d(proj)]
    return _orient(cycle, pts, normal)


def _cdd_planes(pts: Sequence[Point3]) -> List[Tuple[Point3, int]]:
    """Outward facet planes n . p <= offset of a full-dimensional point set, from cdd in fraction mode."""
    generators = cdd.Matrix([[1, *p] for p in pts], number_type="fraction")
    generators.rep_type = cdd.RepType.GENERATOR
    inequalities = cdd.Polyhedron(generators).get_inequalities()
    planes = []
    for i in range(inequalities.row_size):
        # cdd rows [b, a] mean b + a . p >= 0
        b, *a = (Fraction(x) for x in inequalities[i])
        den = common_denominator([b, *a])
        normal = tuple(int(-x * den) for x in a)
        if normal == (0, 0, 0):
            continue
        planes.append(_normalize_plane(normal, int(b * den)))  # type: ignore[arg-type]
    logger.debug(f"cdd returned {len(planes)} inequalities for {len(pts)} points")
    return planes


def _hyperplane_of(points: Sequence[FieldElement]) -> Optional[List[Fraction]]:
    rows = [list(p.coords) + [Fraction(-1)] for p in points]
    for vec in nullspace(rows):
        if any(vec[:4]):
            return vec[:4]
    return None


def hull3(points: Sequence[FieldElement], phi: Optional[Sequence[Rational]] = None) -> FaceLattice:
    """Face lattice of the convex hull of points lying in one hyperplane.

    Args:
        points: points in a hyperplane phi = c
        phi: the hyperplane's functional; found from the points if omitted

    Raises:
        DegenerateHullError: if the points do not lie in any hyperplane
    """
    pts4 = sorted(set(points))
    if not pts4:
        raise DegenerateHullError("hull of an empty point set", -1)
    if phi is None:
        phi = _hyperplane_of(pts4) if len(pts4) > 1 else [Fraction(1), 0, 0, 0]
        if phi is None:
            raise DegenerateHullError("points span all of K, not a hyperplane", 4)
    dropped = drop_index(phi)
    internal = [internal_coordinates(p, dropped) for p in pts4]
    scale = common_denominator([x for p in internal for x in p])
    pts: List[Point3] = [tuple(int(x * scale) for x in p) for p in internal]  # type: ignore[misc]

    base = pts[0]
    dim = rank([[Fraction(x) for x in _sub(p, base)] for p in pts[1:]]) if len(pts) > 1 else 0

    cycles: List[List[int]] = []
    planes: List[Tuple[Point3, int]] = []
    if dim == 3:
        seen: Dict[Tuple[Point3, int], List[int]] = {}
        for normal, offset in _cdd_planes(pts):
            side = [_dot(normal, p) - offset for p in pts]
            if any(s > 0 for s in side):
                raise DegenerateHullError(f"inequality {normal} . p <= {offset} cuts off input points", dim)
            tight = [idx for idx, s in enumerate(side) if s == 0]
            if len(tight) < 3:
                continue
            if rank([[Fraction(x) for x in _sub(pts[i], pts[tight[0]])] for i in tight[1:]]) < 2:
                continue
            seen.setdefault((normal, offset), tight)
        for key in sorted(seen):
            cycles.append(_polygon(seen[key], pts, key[0]))
            planes.append(key)
    elif dim == 2:
        normal = (0, 0, 0)
        for j, k in combinations(range(1, len(pts)), 2):
            normal = _cross(_sub(pts[j], base), _sub(pts[k], base))
            if normal != (0, 0, 0):
                break
        cycles.append(_polygon(list(range(len(pts))), pts, normal))
        planes.append(_normalize_plane(normal, _dot(normal, base)))

    if dim == 3 or dim == 2:
        vertex_ids = sorted({i for c in cycles for i in c})
    elif dim == 1:
        vertex_ids = [0, len(pts) - 1]
    else:
        vertex_ids = [0]
    index = {old: new for new, old in enumerate(vertex_ids)}
    faces = []
    for cycle, plane in zip(cycles, planes):
        mapped = [index[i] for i in cycle]
        start = mapped.index(min(mapped))
        faces.append((tuple(mapped[start:] + mapped[:start]), plane))
    faces.sort()
    edges = set()
    for cycle, _ in faces:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            edges.add((min(a, b), max(a, b)))
    if dim == 1:
        edges.add((0, 1))

    lattice = FaceLattice(
        vertices=[pts4[i] for i in vertex_ids],
        edges=sorted(edges),
        faces=[f for f, _ in faces],
        planes=[p for _, p in faces],
        non_vertices=[p for i, p in enumerate(pts4) if i not in index],
        dimension=dim,
        dropped=dropped,
        scale=scale,
    )
    if dim == 3 and lattice.euler_characteristic != 2:
        raise DegenerateHullError(f"face lattice {lattice.face_vector} violates Euler's relation", dim)
    if dim < 3:
        logger.debug(f"Hull of {len(pts4)} points is {dim}-dimensional")
    return lattice
