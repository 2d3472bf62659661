"""Units, the totally positive unit group and its action on vertex sets."""

import itertools
import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict

from quartic_hull.exceptions import DivisionByZeroError, InsufficientRankError, QuarticHullError, UnitBasisError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement
from quartic_hull.field.roots import numeric_roots
from quartic_hull.lattice.enumeration import enumerate_region, orthant_box_vertices, reduced_basis
from quartic_hull.lattice.order import IntegralLattice
from quartic_hull.utils.config import config
from quartic_hull.utils.linalg import common_denominator, hermite_normal_form, lll_reduce

logger = logging.getLogger(__name__)

# fractional parts closer than this to an integer count as ambiguous
BOUNDARY_EPSILON = 1e-9
RANK_TOLERANCE = 1e-8
MAX_INDEX_DENOMINATOR = 10**6


class LogVector(BaseModel):
    """ln|sigma_i(u)| for the four embeddings, with an error bound."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: Tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf, mpmath.mpf]
    error: float

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.values], dtype=float)

    def total(self) -> mpmath.mpf:
        return mpmath.fsum(self.values)


def is_unit(v: FieldElement, lattice: IntegralLattice, field: FieldContext) -> bool:
    """v and v^-1 are integral and |N(v)| = 1."""
    if not lattice.contains(v) or abs(field.norm(v)) != 1:
        return False
    return lattice.contains(field.inv(v))


def search_units(
    lattice: IntegralLattice,
    field: FieldContext,
    radius: float = 60.0,
    positive_only: bool = False,
) -> List[FieldElement]:
    """Units whose conjugates all lie in [1/radius, radius] in absolute value.

    Sign orthants are scanned up to the global sign -1, so every unit is
    reported once, normalised to a positive first conjugate. With
    ``positive_only`` only the totally positive orthant is scanned.
    """
    if radius < 1:
        raise ValueError(f"search radius must be >= 1, got {radius}")
    if positive_only:
        orthants = [(1, 1, 1, 1)]
    else:
        orthants = [(1,) + rest for rest in itertools.product((1, -1), repeat=3)]

    rows = reduced_basis(lattice, field)
    lo, hi = 1.0 / radius, float(radius)
    found = set()
    for signs in orthants:
        sign_arr = np.array(signs, dtype=float)

        def prefilter(y: np.ndarray) -> np.ndarray:
            a = y * sign_arr
            mask = np.all(a >= lo * (1 - 1e-9), axis=1) & np.all(a <= hi * (1 + 1e-9), axis=1)
            logs = np.log(np.where(a > 0, a, 1.0)).sum(axis=1)
            return mask & (np.abs(logs) < 1e-6)

        def accept(v: FieldElement) -> bool:
            if abs(field.norm(v)) != 1:
                return False
            if field.sign_vector(v).signs != signs:
                return False
            return lattice.contains(field.inv(v))

        units, scan = enumerate_region(rows, field, orthant_box_vertices(signs, radius), prefilter, accept)
        logger.debug(f"Orthant {signs}: {len(units)} units from {scan.candidates} candidates")
        found.update(units)
    result = sorted(found)
    logger.info(f"Found {len(result)} units within radius {radius}")
    return result


def log_embedding(u: FieldElement, field: FieldContext, dps: Optional[int] = None) -> LogVector:
    """Componentwise ln|conjugate|.

    Raises:
        DivisionByZeroError: for the zero element
    """
    if u.is_zero():
        raise DivisionByZeroError("log embedding of 0")
    digits = dps or field.dps
    with mpmath.workdps(digits):
        conj = field.numeric_conjugates(u, digits)
        values = tuple(mpmath.log(abs(x)) for x in conj)
        scale = 1 + max(abs(x) for x in values)
    return LogVector(values=values, error=float(scale) * 10.0 ** (5 - digits))


def _positive_representative(u: FieldElement, field: FieldContext) -> FieldElement:
    signs = field.sign_vector(u).signs
    if all(s > 0 for s in signs):
        return u
    if all(s < 0 for s in signs):
        return -u
    return field.mul(u, u)


def _log_rank(vectors: Sequence[np.ndarray]) -> int:
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(np.array(vectors), tol=RANK_TOLERANCE))


class UnitGroup:
    """A free abelian group of totally positive units with three generators."""

    def __init__(self, generators: Sequence[FieldElement], field: FieldContext, lattice: IntegralLattice):
        """Initialize the unit group.

        Args:
            generators: three multiplicatively independent totally positive units
            field: the field context
            lattice: the order the units belong to
        """
        if len(generators) != 3:
            raise InsufficientRankError(f"a unit group needs 3 generators, got {len(generators)}", len(generators))
        self.field = field
        self.lattice = lattice
        self.generators: List[FieldElement] = list(generators)
        self.logs: List[LogVector] = [log_embedding(g, field) for g in self.generators]
        self._log_matrix = np.array([lv.as_array() for lv in self.logs])
        if _log_rank(list(self._log_matrix)) != 3:
            raise InsufficientRankError("generator logs are dependent", _log_rank(list(self._log_matrix)))
        self._inverses = [field.inv(g) for g in self.generators]
        self._power_cache: Dict[Tuple[int, int], FieldElement] = {}

    @property
    def log_matrix(self) -> np.ndarray:
        return self._log_matrix

    def _generator_power(self, j: int, e: int) -> FieldElement:
        key = (j, e)
        if key not in self._power_cache:
            base = self.generators[j] if e >= 0 else self._inverses[j]
            self._power_cache[key] = self.field.power(base, abs(e))
        return self._power_cache[key]

    def power(self, exponents: Sequence[int]) -> FieldElement:
        """prod_j g_j^e_j, exactly."""
        result = FieldElement.one()
        for j, e in enumerate(exponents):
            if e:
                result = self.field.mul(result, self._generator_power(j, int(e)))
        return result

    def log_coordinates(self, log_values: np.ndarray) -> np.ndarray:
        """t with log_values ~ t @ log_matrix, after projecting to sum zero."""
        target = np.asarray(log_values, dtype=float)
        target = target - target.mean()
        t, *_ = np.linalg.lstsq(self._log_matrix.T, target, rcond=None)
        return t

    def decompose(self, u: FieldElement) -> Optional[Tuple[int, int, int]]:
        """Exponents e with u = prod g_j^e_j, or None if u is not in the group."""
        if abs(self.field.norm(u)) != 1 or not self.field.is_strictly_positive(u):
            return None
        t = self.log_coordinates(log_embedding(u, self.field).as_array())
        exponents = tuple(int(round(x)) for x in t)
        if self.power(exponents) == u:
            return exponents  # type: ignore[return-value]
        return None

    def contains(self, u: FieldElement) -> bool:
        return self.decompose(u) is not None

    def __repr__(self) -> str:
        return f"UnitGroup({', '.join(str(g) for g in self.generators)})"


def reconstruct_unit(
    log_values: Sequence[mpmath.mpf], field: FieldContext, lattice: IntegralLattice
) -> Optional[FieldElement]:
    """The lattice element whose conjugates are exp(log_values), if it exists."""
    with mpmath.workdps(field.dps):
        xs = numeric_roots(field.params, field.dps)
        vander = mpmath.matrix([[x**3, x**2, x, 1] for x in xs])
        y = mpmath.matrix([mpmath.exp(v) for v in log_values])
        coeffs = mpmath.lu_solve(vander, y)
        basis = mpmath.matrix([[mpmath.mpf(c.numerator) / c.denominator for c in row] for row in lattice.basis])
        z = mpmath.lu_solve(basis.T, coeffs)
        rounded = [int(mpmath.nint(z[i])) for i in range(4)]
        if any(abs(z[i] - rounded[i]) > mpmath.mpf(10) ** -6 for i in range(4)):
            return None
    return lattice.element(rounded)


def _rationalize(x: mpmath.mpf, tol: float) -> Optional[Fraction]:
    q = Fraction(mpmath.nstr(x, 40, strip_zeros=False)).limit_denominator(MAX_INDEX_DENOMINATOR)
    if abs(float(x - mpmath.mpf(q.numerator) / q.denominator)) > tol:
        return None
    return q


def totally_positive_basis(
    units: Sequence[FieldElement], field: FieldContext, lattice: IntegralLattice
) -> UnitGroup:
    """A basis of the group generated by the totally positive members of ``units``.

    Totally negative units are negated and mixed-sign ones squared. Three
    independent logs give a starting basis; each further unit is written in
    that basis with exact rational coordinates and the basis is refined by
    integer HNF, the new generators being rebuilt from their logs and
    verified exactly. The result is LLL-reduced in log space.

    Raises:
        InsufficientRankError: if the logs span less than rank 3
        UnitBasisError: if a unit cannot be merged into the basis or does not
            decompose over the result
    """
    positives = sorted({_positive_representative(u, field) for u in units} - {FieldElement.one()})
    logs = {u: log_embedding(u, field) for u in positives}

    basis: List[FieldElement] = []
    for u in sorted(positives, key=lambda w: float(np.abs(logs[w].as_array()).sum())):
        if _log_rank([logs[b].as_array() for b in basis] + [logs[u].as_array()]) > len(basis):
            basis.append(u)
        if len(basis) == 3:
            break
    if len(basis) < 3:
        raise InsufficientRankError(f"units span a log lattice of rank {len(basis)}", len(basis))

    with mpmath.workdps(field.dps):
        for u in positives:
            if u in basis:
                continue
            basis = _refine(basis, u, logs, field, lattice)

    group = UnitGroup(basis, field, lattice)
    transform = lll_reduce(group.log_matrix[:, :3])
    reduced = [group.power(row) for row in transform]
    group = UnitGroup(reduced, field, lattice)

    missing = [u for u in positives if group.decompose(u) is None]
    if missing:
        raise UnitBasisError(
            f"{len(missing)} units do not decompose over the computed basis: {missing[:3]}", missing[0]
        )
    logger.info(f"Unit group certified: {group}")
    return group


def _refine(
    basis: List[FieldElement],
    u: FieldElement,
    logs: Dict[FieldElement, LogVector],
    field: FieldContext,
    lattice: IntegralLattice,
) -> List[FieldElement]:
    """Basis of the group generated by ``basis`` and ``u``."""
    mat = mpmath.matrix([[logs[b].values[i] for i in range(3)] for b in basis]).T
    target = mpmath.matrix([logs[u].values[i] for i in range(3)])
    t = mpmath.lu_solve(mat, target)
    coords = [_rationalize(t[i], 1e-12) for i in range(3)]
    if any(c is None for c in coords):
        raise UnitBasisError(f"unit {u} has no small rational coordinates over the current basis", u)
    if all(c.denominator == 1 for c in coords):  # type: ignore[union-attr]
        return basis

    den = common_denominator(coords)  # type: ignore[arg-type]
    rows = [[den * int(i == j) for j in range(3)] for i in range(3)] + [[int(c * den) for c in coords]]  # type: ignore
    new_rows = hermite_normal_form(rows)
    refined = []
    for row in new_rows:
        values = [
            mpmath.fsum(mpmath.mpf(row[j]) / den * logs[basis[j]].values[i] for j in range(3)) for i in range(4)
        ]
        w = reconstruct_unit(values, field, lattice)
        if w is None or abs(field.norm(w)) != 1 or not field.is_strictly_positive(w):
            raise UnitBasisError(f"could not rebuild a unit from refined log {[float(v) for v in values]}", u)
        refined.append(w)
        logs[w] = log_embedding(w, field)
    logger.debug(f"Refined unit basis by {u}: index {den}")
    return refined


def discover_unit_group(
    lattice: IntegralLattice,
    field: FieldContext,
    radius: Optional[float] = None,
    doublings: Optional[int] = None,
) -> UnitGroup:
    """Search units and build the group, doubling the radius on insufficient rank."""
    r = float(radius if radius is not None else config.get_int("unit_radius"))
    tries = doublings if doublings is not None else config.get_int("unit_radius_doublings")
    for attempt in range(tries + 1):
        units = search_units(lattice, field, r, positive_only=True)
        try:
            return totally_positive_basis(units, field, lattice)
        except InsufficientRankError as e:
            if attempt == tries:
                raise
            logger.warning(f"{e}; doubling search radius to {2 * r}")
            r *= 2
    raise QuarticHullError("unreachable")


def canonicalize_cell(
    vertices: Sequence[FieldElement], group: UnitGroup, field: FieldContext
) -> Tuple[Tuple[FieldElement, ...], FieldElement]:
    """Representative of the orbit of a vertex set and the unit that maps to it.

    The log-centroid of the image lies in the half-open fundamental
    parallelepiped of the log lattice; near its boundary both sides are tried
    and the lexicographically smallest sorted vertex tuple wins.
    """
    if not vertices:
        raise ValueError("cannot canonicalize an empty vertex set")
    logs = np.array([np.log(field.float_conjugates(v)) for v in vertices])
    t = group.log_coordinates(logs.mean(axis=0))
    options = []
    for x in t:
        f = math.floor(x)
        frac = x - f
        choice = [f]
        if frac < BOUNDARY_EPSILON:
            choice.append(f - 1)
        elif frac > 1 - BOUNDARY_EPSILON:
            choice.append(f + 1)
        options.append(choice)

    best: Optional[Tuple[Tuple[FieldElement, ...], FieldElement]] = None
    for shift in itertools.product(*options):
        u = group.power([-s for s in shift])
        image = tuple(sorted(field.mul(u, v) for v in vertices))
        if best is None or image < best[0]:
            best = (image, u)
    assert best is not None
    return best
