"""Certified enumeration of lattice points in compact regions of the positive cone.

Every region is a polytope in embedding space (the four real conjugates) with
rational or interval vertices. A coordinate over an LLL-reduced lattice basis is
a trace against a dual element, so its range over the region is bounded with
mpmath interval arithmetic and the integer box is certified to cover the region.
Candidates are prefiltered in numpy with a conservative tolerance and then
re-checked in exact arithmetic.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from mpmath import libmp
from pydantic import BaseModel, ConfigDict, Field

from quartic_hull.exceptions import UnboundedSlabError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, Rational
from quartic_hull.field.roots import to_interval
from quartic_hull.lattice.order import IntegralLattice
from quartic_hull.utils.linalg import dot, inverse, lll_reduce

logger = logging.getLogger(__name__)

# relative slack of the float prefilter; the exact filter decides
PREFILTER_TOLERANCE = 1e-7
CHUNK = 200_000

Mask = Callable[[np.ndarray], np.ndarray]


class RegionScan(BaseModel):
    """What was scanned: the integer box in reduced coordinates and its size."""

    box: List[Tuple[int, int]]
    candidates: int
    prefiltered: int


class SlabEnumeration(BaseModel):
    """All strictly positive lattice points with phi(v) <= level."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    phi: Tuple[Fraction, Fraction, Fraction, Fraction]
    level: Fraction
    points: List[FieldElement] = Field(default_factory=list)
    scan: Optional[RegionScan] = None

    def on_level(self) -> List[FieldElement]:
        return [v for v in self.points if evaluate_functional(self.phi, v) == self.level]

    def below_level(self) -> List[FieldElement]:
        return [v for v in self.points if evaluate_functional(self.phi, v) < self.level]


def evaluate_functional(phi: Sequence[Rational], v: FieldElement) -> Fraction:
    return dot([Fraction(p) for p in phi], list(v.coords))


def embedding_matrix(rows: Sequence[FieldElement], field: FieldContext) -> np.ndarray:
    """Row i holds the float conjugates of rows[i]."""
    return np.array([field.float_conjugates(r) for r in rows], dtype=float)


def reduced_basis(
    lattice: IntegralLattice, field: FieldContext, weights: Optional[Sequence[float]] = None
) -> List[FieldElement]:
    """Lattice basis LLL-reduced for the weighted embedding y -> (w_i * y_i)."""
    rows = lattice.rows
    emb = embedding_matrix(rows, field)
    if weights is not None:
        emb = emb * np.asarray(weights, dtype=float)[None, :]
    transform = lll_reduce(emb)
    return [
        FieldElement.from_coords(
            sum((Fraction(transform[i][j]) * rows[j].coords[c] for j in range(4)), Fraction(0)) for c in range(4)
        )
        for i in range(4)
    ]


def coordinate_duals(rows: Sequence[FieldElement], field: FieldContext) -> List[FieldElement]:
    """w_j with Tr(w_j * v) equal to the j-th coordinate of v over ``rows``."""
    r_inv = inverse([list(r.coords) for r in rows])
    return [field.trace_dual([r_inv[c][j] for c in range(4)]) for j in range(4)]


def _endpoint(raw) -> Fraction:
    if raw in (libmp.finf, libmp.fninf, libmp.fnan):
        raise UnboundedSlabError("region box is not finite at the working precision")
    return Fraction(*libmp.to_rational(raw))


def _box(vertices: Sequence[Sequence], rows: Sequence[FieldElement], field: FieldContext) -> List[Tuple[int, int]]:
    """Integer ranges of the coordinates over ``rows`` of every point in the hull of ``vertices``.

    Coordinate j of a point y of embedding space is sum_i w_j(x_i) * y_i; the
    conjugates of w_j and the vertices are intervals, so the range is certified.
    """
    weights = [field.interval_conjugates(w) for w in coordinate_duals(rows, field)]
    points = [[to_interval(x) for x in vertex] for vertex in vertices]
    box = []
    for w in weights:
        values = [sum((wi * yi for wi, yi in zip(w, y)), to_interval(0)) for y in points]
        lo = min(_endpoint(v._mpi_[0]) for v in values)
        hi = max(_endpoint(v._mpi_[1]) for v in values)
        box.append((math.floor(lo), math.ceil(hi)))
    return box


def _combine(rows: Sequence[FieldElement], z: Sequence[int]) -> FieldElement:
    return FieldElement.from_coords(
        sum((z[j] * rows[j].coords[c] for j in range(4) if z[j]), Fraction(0)) for c in range(4)
    )


def enumerate_region(
    rows: Sequence[FieldElement],
    field: FieldContext,
    vertices: Sequence[Sequence],
    prefilter: Optional[Mask],
    accept: Callable[[FieldElement], bool],
) -> Tuple[List[FieldElement], RegionScan]:
    """Scan the lattice spanned by ``rows`` over the box covering a region.

    Args:
        rows: lattice basis (reduced or not)
        field: the field context
        vertices: embedding-space vertices of the region (rationals or mpmath
            intervals), one per row
        prefilter: vectorised float mask over embedding values; None keeps all
        accept: exact membership test

    Returns:
        Sorted accepted points and the scan record
    """
    emb = embedding_matrix(rows, field)
    box = _box(vertices, rows, field)
    sizes = [hi - lo + 1 for lo, hi in box]
    total = int(np.prod(sizes))
    logger.debug(f"Scanning box {box} ({total} candidates)")

    found = set()
    survivors = 0
    ranges = [np.arange(lo, hi + 1) for lo, hi in box]
    inner = np.array(np.meshgrid(*ranges[1:], indexing="ij")).reshape(3, -1).T
    for start in range(0, inner.shape[0], CHUNK):
        block = inner[start : start + CHUNK]
        for z0 in ranges[0]:
            z = np.column_stack([np.full(block.shape[0], z0), block])
            if prefilter is not None:
                y = z.astype(float) @ emb
                z = z[prefilter(y)]
            survivors += z.shape[0]
            for cand in z:
                v = _combine(rows, [int(c) for c in cand])
                if accept(v):
                    found.add(v)
    return sorted(found), RegionScan(box=box, candidates=total, prefiltered=survivors)


def _tolerance(y: np.ndarray) -> float:
    return PREFILTER_TOLERANCE * (1.0 + float(np.abs(y).max(initial=0.0)))


def slab_dual(phi: Sequence[Rational], field: FieldContext) -> FieldElement:
    """The dual element of phi, checked to be strictly positive.

    Raises:
        UnboundedSlabError: if the dual element is not totally positive
    """
    lam = field.dual_element(phi)
    if not field.is_strictly_positive(lam):
        raise UnboundedSlabError(
            f"functional {tuple(str(p) for p in phi)} has dual element {lam} with signs "
            f"{field.sign_vector(lam)}; the slab is unbounded"
        )
    return lam


def slab_vertices(lam: FieldElement, level: Fraction, field: FieldContext) -> List[List[mpmath.iv.mpf]]:
    """0 and level / lambda_i * e_i, the corners of the slab simplex, as intervals."""
    c = to_interval(level)
    zero = to_interval(0)
    conj = field.interval_conjugates(lam)
    return [[zero] * 4] + [[c / conj[i] if i == j else zero for j in range(4)] for i in range(4)]


def enumerate_slab(
    phi: Sequence[Rational], level: Rational, lattice: IntegralLattice, field: FieldContext
) -> SlabEnumeration:
    """All strictly positive lattice points v with phi(v) <= level.

    The dual element lambda turns the slab into the simplex
    {y > 0, sum lambda_i y_i <= level} in embedding space, which is compact iff
    lambda is totally positive.

    Raises:
        UnboundedSlabError: if the dual element of phi is not totally positive
    """
    phi_q = tuple(Fraction(p) for p in phi)
    c = Fraction(level)
    lam_element = slab_dual(phi_q, field)
    result = SlabEnumeration(phi=phi_q, level=c)
    if c <= 0:
        return result

    lam = np.array(field.float_conjugates(lam_element), dtype=float)
    rows = reduced_basis(lattice, field, weights=lam / float(c))

    def prefilter(y: np.ndarray) -> np.ndarray:
        tol = _tolerance(y)
        return np.all(y > -tol, axis=1) & (y @ lam <= float(c) + tol * lam.sum())

    def accept(v: FieldElement) -> bool:
        return evaluate_functional(phi_q, v) <= c and field.is_strictly_positive(v)

    points, scan = enumerate_region(rows, field, slab_vertices(lam_element, c, field), prefilter, accept)
    result.points = points
    result.scan = scan
    logger.debug(f"Slab {phi_q} <= {c}: {len(points)} points from {scan.candidates} candidates")
    return result


def points_on_level(
    phi: Sequence[Rational], level: Rational, lattice: IntegralLattice, field: FieldContext
) -> List[FieldElement]:
    return enumerate_slab(phi, level, lattice, field).on_level()


def brute_force_slab(
    phi: Sequence[Rational], level: Rational, lattice: IntegralLattice, field: FieldContext
) -> List[FieldElement]:
    """Same set as :func:`enumerate_slab` from the raw basis, with no float prefilter."""
    phi_q = tuple(Fraction(p) for p in phi)
    c = Fraction(level)
    lam = slab_dual(phi_q, field)
    if c <= 0:
        return []

    def accept(v: FieldElement) -> bool:
        return evaluate_functional(phi_q, v) <= c and field.is_strictly_positive(v)

    points, _ = enumerate_region(lattice.rows, field, slab_vertices(lam, c, field), None, accept)
    return points


def orthant_box_vertices(signs: Sequence[int], radius: Rational) -> List[Tuple[Fraction, ...]]:
    """Corners of prod_i s_i * [1/radius, radius], exactly."""
    r = Fraction(radius)
    return list(itertools.product(*[(s / r, s * r) for s in signs]))
