"""Fundamental domains of the totally positive unit group acting on the boundary."""

import json
import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from quartic_hull.exceptions import CellCapReachedError, DomainError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, parse_rational
from quartic_hull.geometry.facet import Facet, SupportFunctional, pivot
from quartic_hull.geometry.hull import hull3
from quartic_hull.lattice.order import IntegralLattice
from quartic_hull.units.group import UnitGroup, canonicalize_cell
from quartic_hull.utils.config import config

logger = logging.getLogger(__name__)

Slot = Tuple[int, int]
FaceKey = Tuple[FieldElement, ...]


class Identification(BaseModel):
    """unit * (face_a of cell_a) = face_b of cell_b, vertex by vertex."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cell_a: int
    face_a: int
    cell_b: int
    face_b: int
    unit: FieldElement
    bijection: Tuple[Tuple[FieldElement, FieldElement], ...]

    @property
    def is_gluing(self) -> bool:
        """Unit 1: both cells share the face inside the complex."""
        return self.unit == FieldElement.one()

    def inverse(self, field: FieldContext) -> "Identification":
        return Identification(
            cell_a=self.cell_b,
            face_a=self.face_b,
            cell_b=self.cell_a,
            face_b=self.face_a,
            unit=field.inv(self.unit),
            bijection=tuple(sorted((b, a) for a, b in self.bijection)),
        )


class ClosureReport(BaseModel):
    """Necessary conditions for the quotient to be a closed 3-manifold."""

    closed: bool
    free_faces: int
    vertices: int
    edges: int
    faces: int
    cells: int
    euler_characteristic: int
    pseudo_manifold: bool
    identifications: int
    gluings: int


class CellComplex(BaseModel):
    """Cells at actual positions, their face pairings and the faces still free."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    cells: List[Facet] = Field(default_factory=list)
    identifications: List[Identification] = Field(default_factory=list)
    free_faces: List[Slot] = Field(default_factory=list)

    def face(self, slot: Slot) -> List[FieldElement]:
        cell, face = slot
        return self.cells[cell].polytope.face_vertices(face)

    def proper_identifications(self) -> List[Identification]:
        return [i for i in self.identifications if not i.is_gluing]

    def gluings(self) -> List[Identification]:
        return [i for i in self.identifications if i.is_gluing]

    def to_export(self, field: Optional[FieldContext] = None) -> "ComplexExport":
        cells = []
        for facet in self.cells:
            cells.append(
                CellRecord(
                    functional=[str(p) for p in facet.functional.phi],
                    level=str(facet.functional.level),
                    vertices=[v.to_strings() for v in facet.vertices],
                    faces=[list(f) for f in facet.polytope.faces],
                    points=[v.to_strings() for v in facet.points],
                )
            )
        idents = []
        for ident in self.identifications:
            va = self.cells[ident.cell_a].vertices
            vb = self.cells[ident.cell_b].vertices
            idents.append(
                IdentificationRecord(
                    cell_a=ident.cell_a,
                    face_a=ident.face_a,
                    cell_b=ident.cell_b,
                    face_b=ident.face_b,
                    unit=ident.unit.to_strings(),
                    bijection=[[va.index(a), vb.index(b)] for a, b in ident.bijection],
                )
            )
        return ComplexExport(
            field=[field.params.two_a, field.params.b] if field is not None else None,
            cells=cells,
            identifications=idents,
            free_faces=[list(s) for s in self.free_faces],
            report=verify_closed(self),
        )

    def to_json(self, field: Optional[FieldContext] = None) -> str:
        return self.to_export(field).model_dump_json(indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CellComplex":
        export = ComplexExport.model_validate(json.loads(text))
        cells = []
        for rec in export.cells:
            functional = SupportFunctional(
                phi=tuple(parse_rational(p) for p in rec.functional), level=parse_rational(rec.level)
            )
            points = sorted(FieldElement.from_coords(parse_rational(x) for x in p) for p in rec.points)
            cells.append(Facet(functional=functional, polytope=hull3(points, functional.phi), points=points))
        idents = []
        for rec in export.identifications:
            va = cells[rec.cell_a].vertices
            vb = cells[rec.cell_b].vertices
            idents.append(
                Identification(
                    cell_a=rec.cell_a,
                    face_a=rec.face_a,
                    cell_b=rec.cell_b,
                    face_b=rec.face_b,
                    unit=FieldElement.from_coords(parse_rational(x) for x in rec.unit),
                    bijection=tuple((va[i], vb[j]) for i, j in rec.bijection),
                )
            )
        return cls(cells=cells, identifications=idents, free_faces=[tuple(s) for s in export.free_faces])


class CellRecord(BaseModel):
    functional: List[str]
    level: str
    vertices: List[List[str]]
    faces: List[List[int]]
    points: List[List[str]]


class IdentificationRecord(BaseModel):
    cell_a: int
    face_a: int
    cell_b: int
    face_b: int
    unit: List[str]
    bijection: List[List[int]]


class ComplexExport(BaseModel):
    """JSON schema of an exported cell complex."""

    field: Optional[List[int]] = None
    cells: List[CellRecord]
    identifications: List[IdentificationRecord]
    free_faces: List[List[int]]
    report: ClosureReport


class UnionFind:
    """Disjoint sets over hashable nodes."""

    def __init__(self):
        self.parent: Dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self, kind: str) -> Dict:
        groups: Dict = defaultdict(list)
        for node in self.parent:
            if node[0] == kind:
                groups[self.find(node)].append(node)
        return groups


def _edge_index(facet: Facet, a: FieldElement, b: FieldElement) -> int:
    verts = facet.vertices
    i, j = verts.index(a), verts.index(b)
    return facet.polytope.edges.index((min(i, j), max(i, j)))


def verify_closed(complex_: CellComplex) -> ClosureReport:
    """Orbit counts of the quotient complex under the face pairings.

    Vertices, edges and faces of all cells are merged along every pairing's
    vertex bijection; chi = V - E + F - C.
    """
    uf = UnionFind()
    for c, facet in enumerate(complex_.cells):
        for v in range(len(facet.vertices)):
            uf.add(("v", c, v))
        for e in range(len(facet.polytope.edges)):
            uf.add(("e", c, e))
        for f in range(len(facet.polytope.faces)):
            uf.add(("f", c, f))

    for ident in complex_.identifications:
        fa, fb = complex_.cells[ident.cell_a], complex_.cells[ident.cell_b]
        uf.union(("f", ident.cell_a, ident.face_a), ("f", ident.cell_b, ident.face_b))
        image = dict(ident.bijection)
        for a, b in ident.bijection:
            uf.union(("v", ident.cell_a, fa.vertices.index(a)), ("v", ident.cell_b, fb.vertices.index(b)))
        cycle = fa.polytope.face_vertices(ident.face_a)
        for a1, a2 in zip(cycle, cycle[1:] + cycle[:1]):
            uf.union(
                ("e", ident.cell_a, _edge_index(fa, a1, a2)),
                ("e", ident.cell_b, _edge_index(fb, image[a1], image[a2])),
            )

    face_classes = uf.classes("f")
    v, e, f = len(uf.classes("v")), len(uf.classes("e")), len(face_classes)
    c = len(complex_.cells)
    gluings = len(complex_.gluings())
    return ClosureReport(
        closed=not complex_.free_faces,
        free_faces=len(complex_.free_faces),
        vertices=v,
        edges=e,
        faces=f,
        cells=c,
        euler_characteristic=v - e + f - c,
        pseudo_manifold=all(len(members) == 2 for members in face_classes.values()),
        identifications=len(complex_.identifications) - gluings,
        gluings=gluings,
    )


class DomainBuilder:
    """Mutable breadth-first construction of a fundamental domain.

    Cells live at their actual positions in K. Each 2-face is keyed by the
    canonical form of its vertex set. With ``pair_on_insert`` two free slots
    with the same key are paired as soon as the second one appears; without
    it a face is only paired when the pivot across it comes back to a known
    orbit, and the partner is then looked up with :func:`match_face`.
    """

    def __init__(
        self,
        field: FieldContext,
        lattice: IntegralLattice,
        group: UnitGroup,
        max_cells: Optional[int] = None,
        pair_on_insert: bool = True,
    ):
        """Initialize the builder.

        Args:
            field: the field context
            lattice: the order
            group: the totally positive unit group
            max_cells: cell cap (configuration key ``max_cells`` by default)
            pair_on_insert: pair new faces with free faces of the same orbit at once
        """
        self.field = field
        self.lattice = lattice
        self.group = group
        self.max_cells = max_cells or config.get_int("max_cells")
        self.pair_on_insert = pair_on_insert
        self.cells: List[Facet] = []
        self.cell_keys: Dict[FaceKey, int] = {}
        self.identifications: List[Identification] = []
        self._free: Dict[Slot, Tuple[FaceKey, FieldElement]] = {}
        self._by_key: Dict[FaceKey, List[Slot]] = defaultdict(list)

    @property
    def free_faces(self) -> List[Slot]:
        return sorted(self._free)

    @property
    def finished(self) -> bool:
        return bool(self.cells) and not self._free

    def face(self, slot: Slot) -> List[FieldElement]:
        return self.cells[slot[0]].polytope.face_vertices(slot[1])

    def face_key(self, vertices: List[FieldElement]) -> Tuple[FaceKey, FieldElement]:
        return canonicalize_cell(vertices, self.group, self.field)

    def add_seed(self, facet: Facet) -> int:
        """Add the canonical translate of the seed facet."""
        _, u = canonicalize_cell(facet.vertices, self.group, self.field)
        return self.add_cell(facet.transform(u, self.field) if u != FieldElement.one() else facet)

    def add_cell(self, facet: Facet, origin: Optional[Slot] = None) -> int:
        """Add a facet at its actual position and place its faces.

        Args:
            facet: the new cell
            origin: free slot the facet was reached across; it is glued to the
                face of ``facet`` with the same vertices

        Raises:
            DomainError: if the facet is unit-equivalent to an existing cell
            CellCapReachedError: if the cap is exceeded
        """
        key, _ = canonicalize_cell(facet.vertices, self.group, self.field)
        if key in self.cell_keys:
            raise DomainError(f"facet {facet.functional} repeats the orbit of cell {self.cell_keys[key]}")
        if len(self.cells) >= self.max_cells:
            raise CellCapReachedError(f"cell cap {self.max_cells} reached", len(self.cells))
        index = len(self.cells)
        self.cells.append(facet)
        self.cell_keys[key] = index
        for f in range(len(facet.polytope.faces)):
            self._place((index, f), origin)
        if origin is not None and origin in self._free:
            raise DomainError(f"cell {index} does not contain face {origin} it was reached across")
        logger.info(
            f"Cell {index}: {facet.functional} with face vector {facet.polytope.face_vector}; "
            f"{len(self._free)} free faces"
        )
        return index

    def _place(self, slot: Slot, origin: Optional[Slot] = None) -> None:
        vertices = self.face(slot)
        if origin is not None and origin in self._free and sorted(self.face(origin)) == sorted(vertices):
            self._free.pop(origin)
            self._pair(origin, slot, FieldElement.one())
            return
        key, u = self.face_key(vertices)
        partners = [s for s in self._by_key.get(key, []) if s in self._free] if self.pair_on_insert else []
        if not partners:
            self._free[slot] = (key, u)
            self._by_key[key].append(slot)
            return
        other = partners[0]
        _, u_other = self._free.pop(other)
        # u_other * other = canonical = u * slot, so unit * other = slot
        self._pair(other, slot, self.field.mul(u_other, self.field.inv(u)))

    def _pair(self, a: Slot, b: Slot, unit: FieldElement) -> None:
        """Record unit * (face a) = face b."""
        bijection = tuple(sorted((x, self.field.mul(unit, x)) for x in self.face(a)))
        if sorted(y for _, y in bijection) != sorted(self.face(b)):
            raise DomainError(f"unit {unit} does not carry face {a} onto {b}")
        self.identifications.append(
            Identification(cell_a=a[0], face_a=a[1], cell_b=b[0], face_b=b[1], unit=unit, bijection=bijection)
        )

    def step(self, slot: Optional[Slot] = None) -> int:
        """Pivot across a free face (the smallest by default).

        A new orbit is added as a cell glued along the face. A known orbit
        pairs the face with its free partner found by :func:`match_face`.

        Returns:
            Index of the new or known cell

        Raises:
            DomainError: if the face is not free, or it leads to a known orbit
                whose matching face is already paired
        """
        if not self._free:
            raise DomainError("no free face left")
        slot = slot if slot is not None else min(self._free)
        if slot not in self._free:
            raise DomainError(f"face {slot} is not free")
        cell, face = slot
        facet = self.cells[cell]
        logger.debug(f"Pivoting cell {cell} across face {face}")
        neighbour = pivot(facet, facet.ridges()[face], self.lattice, self.field)
        key, _ = canonicalize_cell(neighbour.vertices, self.group, self.field)
        known = self.cell_keys.get(key)
        if known is None:
            return self.add_cell(neighbour, origin=slot)

        candidates = [s for s in self.free_faces if s != slot]
        match = match_face(self.face(slot), self.complex(), self.group, self.field, candidates)
        if match is None:
            raise DomainError(f"face {slot} leads back to cell {known}, but no free face matches it")
        c, f, unit, _ = match
        if c != known:
            raise DomainError(f"face {slot} leads back to cell {known}, but matches a face of cell {c}")
        self._free.pop(slot)
        self._free.pop((c, f))
        self._pair(slot, (c, f), unit)
        logger.debug(f"Face {slot} identified with face {(c, f)} by {unit}")
        return known

    def run(self) -> CellComplex:
        while self._free:
            self.step()
        complex_ = self.complex()
        logger.info(
            f"Domain finished: {len(self.cells)} cells, {len(complex_.proper_identifications())} identifications"
        )
        return complex_

    def complex(self) -> CellComplex:
        return CellComplex(
            cells=list(self.cells),
            identifications=list(self.identifications),
            free_faces=self.free_faces,
        )


def match_face(
    face: List[FieldElement],
    complex_: CellComplex,
    group: UnitGroup,
    field: FieldContext,
    candidates: Optional[Iterable[Slot]] = None,
) -> Optional[Tuple[int, int, FieldElement, Tuple[Tuple[FieldElement, FieldElement], ...]]]:
    """A face of the complex equal to u * face for a unit u, with the vertex bijection.

    Without ``candidates`` every face of every cell is tried except copies of
    ``face`` itself; with them only the given slots are tried, and a slot with
    the very same vertices matches with u = 1.
    """
    key, u = canonicalize_cell(face, group, field)
    if candidates is None:
        own = tuple(sorted(face))
        slots = [
            (c, f)
            for c, facet in enumerate(complex_.cells)
            for f in range(len(facet.polytope.faces))
            if tuple(sorted(facet.polytope.face_vertices(f))) != own
        ]
    else:
        slots = list(candidates)
    for c, f in slots:
        other_key, u_other = canonicalize_cell(complex_.face((c, f)), group, field)
        if other_key == key:
            unit = field.mul(field.inv(u_other), u)
            return c, f, unit, tuple(sorted((a, field.mul(unit, a)) for a in face))
    return None


def _face_index(facet: Facet, vertices: List[FieldElement]) -> int:
    target = set(vertices)
    for f in range(len(facet.polytope.faces)):
        if set(facet.polytope.face_vertices(f)) == target:
            return f
    raise DomainError(f"no face of {facet.functional} with vertices {[str(v) for v in vertices]}")


def consolidate(complex_: CellComplex, field: FieldContext) -> CellComplex:
    """Move cells by units so that as many pairings as possible become gluings.

    The quotient is unchanged; only the representatives move. Cell 0 stays in
    place and every other cell is placed greedily at the translate that
    satisfies the most pairings with the cells already placed.
    """
    one = FieldElement.one()
    n = len(complex_.cells)
    shifts: Dict[int, FieldElement] = {0: one} if n else {}

    def glued(ident: Identification, placed: Dict[int, FieldElement]) -> bool:
        return field.mul(placed[ident.cell_b], ident.unit) == placed[ident.cell_a]

    while len(shifts) < n:
        best = None
        for ident in complex_.identifications:
            a, b = ident.cell_a, ident.cell_b
            if a in shifts and b not in shifts:
                cell, shift = b, field.mul(shifts[a], field.inv(ident.unit))
            elif b in shifts and a not in shifts:
                cell, shift = a, field.mul(shifts[b], ident.unit)
            else:
                continue
            trial = {**shifts, cell: shift}
            score = sum(
                1
                for other in complex_.identifications
                if cell in (other.cell_a, other.cell_b)
                and other.cell_a in trial
                and other.cell_b in trial
                and glued(other, trial)
            )
            rank_key = (-score, cell, shift.coords)
            if best is None or rank_key < best[0]:
                best = (rank_key, cell, shift)
        if best is None:
            cell = min(set(range(n)) - set(shifts))
            shifts[cell] = one
        else:
            shifts[best[1]] = best[2]

    cells = [
        facet if shifts[i] == one else facet.transform(shifts[i], field) for i, facet in enumerate(complex_.cells)
    ]

    def moved_slot(slot: Slot) -> int:
        cell, face = slot
        old = complex_.cells[cell].polytope.face_vertices(face)
        return _face_index(cells[cell], [field.mul(shifts[cell], v) for v in old])

    idents = []
    for ident in complex_.identifications:
        ta, tb = shifts[ident.cell_a], shifts[ident.cell_b]
        idents.append(
            Identification(
                cell_a=ident.cell_a,
                face_a=moved_slot((ident.cell_a, ident.face_a)),
                cell_b=ident.cell_b,
                face_b=moved_slot((ident.cell_b, ident.face_b)),
                unit=field.mul(field.mul(tb, ident.unit), field.inv(ta)),
                bijection=tuple(sorted((field.mul(ta, x), field.mul(tb, y)) for x, y in ident.bijection)),
            )
        )
    free = sorted((cell, moved_slot((cell, face))) for cell, face in complex_.free_faces)
    result = CellComplex(cells=cells, identifications=idents, free_faces=free)
    logger.info(f"Consolidated {n} cells: {len(complex_.gluings())} -> {len(result.gluings())} gluings")
    return result


def build_domain(
    field: FieldContext,
    lattice: IntegralLattice,
    group: UnitGroup,
    seed: Facet,
    max_cells: Optional[int] = None,
    pair_on_insert: bool = True,
) -> CellComplex:
    """Breadth-first fundamental domain starting from ``seed``, consolidated."""
    builder = DomainBuilder(field, lattice, group, max_cells, pair_on_insert)
    builder.add_seed(seed)
    return consolidate(builder.run(), field)
