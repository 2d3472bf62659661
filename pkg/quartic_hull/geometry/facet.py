"""Support hyperplanes, facets of the boundary and pivoting across ridges."""

import logging
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from quartic_hull.exceptions import DegenerateHullError, InvalidSupportError, PivotError, UnboundedSlabError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, Rational, format_rational, parse_rational
from quartic_hull.geometry.hull import FaceLattice, hull3
from quartic_hull.lattice.enumeration import enumerate_slab, evaluate_functional
from quartic_hull.lattice.order import IntegralLattice
from quartic_hull.utils.config import config
from quartic_hull.utils.linalg import nullspace, primitive_integer_vector, rank, vec_mat

logger = logging.getLogger(__name__)


class SupportFunctional(BaseModel):
    """The hyperplane phi(v) = level with the positive lattice points on the side phi >= level."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phi: Tuple[Fraction, Fraction, Fraction, Fraction]
    level: Fraction

    @classmethod
    def normalized(cls, phi: Sequence[Rational], level: Rational) -> "SupportFunctional":
        """Scale (phi, level) to a primitive integer vector with level > 0.

        Raises:
            InvalidSupportError: if level <= 0
        """
        c = Fraction(level)
        if c <= 0:
            raise InvalidSupportError(f"support level must be positive, got {c}")
        ints = primitive_integer_vector([Fraction(p) for p in phi] + [c])
        return cls(phi=tuple(Fraction(x) for x in ints[:4]), level=Fraction(ints[4]))

    @classmethod
    def parse(cls, text: str) -> "SupportFunctional":
        """Parse ``"c3,c2,c1,c0;c"`` and normalize."""
        if ";" not in text:
            raise ValueError(f"functional must look like 'c3,c2,c1,c0;c', got {text!r}")
        coeffs, level = text.split(";", 1)
        parts = coeffs.replace(",", " ").replace("(", " ").split()
        if len(parts) != 4:
            raise ValueError(f"functional needs 4 coefficients, got {len(parts)}")
        return cls.normalized([parse_rational(p) for p in parts], parse_rational(level.replace(")", "")))

    def value(self, v: FieldElement) -> Fraction:
        return evaluate_functional(self.phi, v)

    @property
    def key(self) -> Tuple[Fraction, ...]:
        return (*self.phi, self.level)

    def __str__(self) -> str:
        return "(" + ",".join(format_rational(p) for p in self.phi) + ";" + format_rational(self.level) + ")"


class CertificateStatus(str, Enum):
    """Outcome of a support-hyperplane check."""

    VALID = "valid"
    UNBOUNDED = "unbounded"
    LOWER_POINT = "lower_point"
    EMPTY_FACE = "empty_face"


class SupportCertificate(BaseModel):
    """Result of :func:`verify_support` with the witness for failures."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    functional: SupportFunctional
    status: CertificateStatus
    dual: Optional[FieldElement] = None
    witness: Optional[FieldElement] = None
    level_points: List[FieldElement] = []
    message: str = ""

    @property
    def is_valid(self) -> bool:
        return self.status == CertificateStatus.VALID


class Ridge(BaseModel):
    """A 2-face given by its vertex cycle."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: Tuple[FieldElement, ...]

    @property
    def key(self) -> Tuple[FieldElement, ...]:
        return tuple(sorted(self.vertices))


class Facet(BaseModel):
    """A bounded 3-face of the boundary: functional, level-set points and face lattice."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    functional: SupportFunctional
    polytope: FaceLattice
    points: List[FieldElement]

    @property
    def vertices(self) -> List[FieldElement]:
        return self.polytope.vertices

    @property
    def non_vertices(self) -> List[FieldElement]:
        return self.polytope.non_vertices

    @property
    def key(self) -> Tuple[FieldElement, ...]:
        return tuple(self.polytope.vertices)

    def ridges(self) -> List[Ridge]:
        return [Ridge(vertices=tuple(self.polytope.face_vertices(i))) for i in range(len(self.polytope.faces))]

    def transform(self, u: FieldElement, field: FieldContext) -> "Facet":
        """Image under multiplication by the unit u: phi becomes phi . M_{u^-1}."""
        matrix = field.mult_matrix(field.inv(u))
        phi = vec_mat(list(self.functional.phi), matrix)
        functional = SupportFunctional.normalized(phi, self.functional.level)
        points = sorted(field.mul(u, p) for p in self.points)
        return Facet(functional=functional, polytope=hull3(points, functional.phi), points=points)

    def contains_point(self, v: FieldElement) -> bool:
        return contains_point(self, v)


def verify_support(
    phi: Sequence[Rational], level: Rational, lattice: IntegralLattice, field: FieldContext
) -> SupportCertificate:
    """Certify that phi >= level on all strictly positive lattice points, with equality attained."""
    functional = SupportFunctional.normalized(phi, level)
    dual = field.dual_element(functional.phi)
    try:
        slab = enumerate_slab(functional.phi, functional.level, lattice, field)
    except UnboundedSlabError as e:
        return SupportCertificate(
            functional=functional, status=CertificateStatus.UNBOUNDED, dual=dual, message=str(e)
        )
    lower = slab.below_level()
    if lower:
        witness = min(lower, key=lambda v: (functional.value(v), v))
        return SupportCertificate(
            functional=functional,
            status=CertificateStatus.LOWER_POINT,
            dual=dual,
            witness=witness,
            message=f"{witness} has value {functional.value(witness)} < {functional.level}",
        )
    on_level = slab.on_level()
    if not on_level:
        return SupportCertificate(
            functional=functional, status=CertificateStatus.EMPTY_FACE, dual=dual, message="no point on the level"
        )
    return SupportCertificate(functional=functional, status=CertificateStatus.VALID, dual=dual, level_points=on_level)


def facet_polytope(
    phi: Sequence[Rational], level: Rational, lattice: IntegralLattice, field: FieldContext
) -> Facet:
    """The facet cut out by a support hyperplane.

    Raises:
        InvalidSupportError: if the functional is not a support hyperplane
        DegenerateHullError: if the face is not 3-dimensional
    """
    cert = verify_support(phi, level, lattice, field)
    if not cert.is_valid:
        raise InvalidSupportError(f"{cert.functional} is not a support hyperplane: {cert.message}", cert)
    polytope = hull3(cert.level_points, cert.functional.phi)
    if polytope.dimension != 3:
        raise DegenerateHullError(
            f"face of {cert.functional} is {polytope.dimension}-dimensional, not a facet", polytope.dimension
        )
    logger.info(
        f"Facet {cert.functional}: {len(cert.level_points)} points, face vector {polytope.face_vector}"
    )
    return Facet(functional=cert.functional, polytope=polytope, points=cert.level_points)


def contains_point(facet: Facet, v: FieldElement) -> bool:
    """Exact point-in-polytope test."""
    if facet.functional.value(v) != facet.functional.level:
        return False
    return facet.polytope.contains_internal(v)


def to_off(facet: Facet) -> str:
    """OFF text of the facet polytope in internal coordinates."""
    poly = facet.polytope
    lines = ["OFF", f"{len(poly.vertices)} {len(poly.faces)} {len(poly.edges)}"]
    dropped = poly.dropped
    for v in poly.vertices:
        lines.append(" ".join(format_rational(c) for i, c in enumerate(v.coords) if i != dropped))
    for face in poly.faces:
        lines.append(" ".join(str(x) for x in (len(face), *face)))
    return "\n".join(lines) + "\n"


def _anchor_direction(
    anchor: Sequence[FieldElement], functional: SupportFunctional, outside: Optional[FieldElement]
) -> Tuple[List[Fraction], Fraction]:
    """A pair (psi, e) vanishing on ``anchor`` and independent of (phi, level).

    If ``outside`` is given (a facet vertex off the anchor), the sign is chosen
    so that psi(outside) > e.
    """
    base = list(functional.phi) + [functional.level]
    rows = [list(p.coords) + [Fraction(-1)] for p in anchor]
    for vec in nullspace(rows):
        if rank([vec, base]) == 2:
            psi, e = vec[:4], vec[4]
            if outside is not None:
                gap = evaluate_functional(psi, outside) - e
                if gap == 0:
                    continue
                if gap < 0:
                    psi, e = [-x for x in psi], -e
            return psi, e
    raise PivotError(f"no rotation axis through {len(anchor)} anchor points for {functional}")


def rotate(
    functional: SupportFunctional,
    anchor: Sequence[FieldElement],
    psi: Sequence[Fraction],
    e: Fraction,
    lattice: IntegralLattice,
    field: FieldContext,
    max_steps: Optional[int] = None,
) -> SupportFunctional:
    """Rotate phi = level about the anchor until it hits new lattice points.

    The family (phi + t psi)(v) = level + t e, t > 0, keeps the anchor on the
    hyperplane; a point with psi(v) < e leaves the valid side once t exceeds
    its ratio (phi(v) - level) / (e - psi(v)), so the next support hyperplane
    sits at the smallest ratio t*. A slab enumeration at any t >= t* whose dual
    element is totally positive contains every point with ratio <= t, which
    makes the minimum exact.

    Raises:
        PivotError: if no crossing is found within ``max_steps`` steps
    """
    steps = max_steps or config.get_int("pivot_max_steps")
    phi = list(functional.phi)
    c = functional.level

    def ratio_min(points: Sequence[FieldElement]) -> Optional[Fraction]:
        best = None
        for v in points:
            denom = e - evaluate_functional(psi, v)
            if denom > 0:
                r = (evaluate_functional(phi, v) - c) / denom
                if best is None or r < best:
                    best = r
        return best

    def family(t: Fraction) -> Tuple[List[Fraction], Fraction]:
        return [p + t * q for p, q in zip(phi, psi)], c + t * e

    def positive_at(t: Fraction) -> bool:
        return field.is_strictly_positive(field.dual_element(family(t)[0]))

    def crossing_at(t: Fraction) -> Optional[Fraction]:
        f, lvl = family(t)
        r = ratio_min(enumerate_slab(f, lvl, lattice, field).points)
        return r if r is not None and r <= t else None

    candidate = None
    growth = Fraction(1)
    for step in range(steps):
        r = ratio_min(enumerate_slab(phi, c + growth, lattice, field).points)
        if r is not None:
            candidate = r
            break
        growth *= 2
    if candidate is None:
        raise PivotError(f"no lattice point beyond the anchor of {functional} within {steps} slab doublings")

    if positive_at(candidate):
        t_star = crossing_at(candidate)
        if t_star is None:
            raise PivotError(f"slab at t={candidate} lost its own witness")
    else:
        lo, hi = Fraction(0), candidate
        t_star = None
        for step in range(steps):
            mid = (lo + hi) / 2
            if not positive_at(mid):
                hi = mid
                continue
            t_star = crossing_at(mid)
            if t_star is not None:
                break
            lo = mid
            logger.debug(f"Rotation of {functional}: no crossing below t={mid}")
        if t_star is None:
            raise PivotError(f"rotation of {functional} did not converge in {steps} bisection steps")

    f, lvl = family(t_star)
    result = SupportFunctional.normalized(f, lvl)
    logger.debug(f"Rotated {functional} to {result} at t={t_star}")
    return result


def pivot(facet: Facet, ridge: Ridge, lattice: IntegralLattice, field: FieldContext) -> Facet:
    """The other facet of the boundary through ``ridge``.

    Raises:
        PivotError: if the ridge is not a 2-face of the facet
    """
    ridge_key = set(ridge.vertices)
    if all(set(r.vertices) != ridge_key for r in facet.ridges()):
        raise PivotError(f"ridge {[str(v) for v in ridge.vertices]} is not a 2-face of {facet.functional}")
    outside = next(v for v in facet.vertices if v not in ridge_key)
    psi, e = _anchor_direction(ridge.vertices, facet.functional, outside)
    functional = rotate(facet.functional, ridge.vertices, psi, e, lattice, field)
    neighbour = facet_polytope(functional.phi, functional.level, lattice, field)
    if not ridge_key <= set(neighbour.vertices):
        raise PivotError(f"pivot of {facet.functional} produced {functional} without the ridge")
    return neighbour


def trace_functional(field: FieldContext) -> SupportFunctional:
    """Tr(v) = 4(l a + n) >= 4 on the positive lattice points, with equality at 1 only."""
    return SupportFunctional.normalized([0, 4 * field.params.a, 0, 4], 4)


def find_seed(lattice: IntegralLattice, field: FieldContext) -> Facet:
    """A first facet: start at the face {1} of the trace functional and rotate until 3-dimensional."""
    functional = trace_functional(field)
    anchor = [FieldElement.one()]
    for _ in range(4):
        points = enumerate_slab(functional.phi, functional.level, lattice, field).on_level()
        anchor = points or anchor
        dim = hull3(anchor, functional.phi).dimension
        if dim == 3:
            return facet_polytope(functional.phi, functional.level, lattice, field)
        psi, e = _anchor_direction(anchor, functional, None)
        functional = rotate(functional, anchor, psi, e, lattice, field)
    raise PivotError("seed search did not reach a 3-dimensional face")
