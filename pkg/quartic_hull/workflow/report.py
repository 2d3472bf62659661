"""Run a preset through the pipeline and compare every stage with its fixtures."""

import logging
import time
from datetime import datetime
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, computed_field

from quartic_hull.domain.complex import CellComplex, build_domain, verify_closed
from quartic_hull.exceptions import CellCapReachedError, QuarticHullError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, format_rational
from quartic_hull.geometry.facet import Facet, SupportFunctional, facet_polytope, find_seed, verify_support
from quartic_hull.geometry.hull import hull3
from quartic_hull.lattice.enumeration import evaluate_functional
from quartic_hull.lattice.order import IntegralLattice, preset_lattice
from quartic_hull.units.group import UnitGroup, discover_unit_group
from quartic_hull.utils.config import Settings, config
from quartic_hull.workflow.presets import HyperplaneFixture, Preset, PresetMode, get_preset, registry

logger = logging.getLogger(__name__)


class CheckStatus(str, Enum):
    """Outcome of one report line."""

    PASS = "pass"
    FAIL = "fail"
    OBSERVED = "observed"
    NOTE = "note"
    SKIPPED = "skipped"


class CheckRecord(BaseModel):
    """One compared (or merely observed) value."""

    name: str
    status: CheckStatus
    expected: str = ""
    actual: str = ""
    citation: str = ""


class Report(BaseModel):
    """All records of one preset run."""

    preset: str
    description: str
    mode: PresetMode
    field: str
    settings: Settings
    records: List[CheckRecord] = Field(default_factory=list)
    started_at: datetime = Field(default_factory=datetime.utcnow)
    duration: float = 0.0

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        return all(r.status != CheckStatus.FAIL for r in self.records)

    @computed_field  # type: ignore[misc]
    @property
    def status(self) -> str:
        if self.mode == PresetMode.EXPLORATORY:
            return "EXPLORATORY"
        return "PASS" if self.passed else "FAIL"

    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.status == CheckStatus.FAIL]

    def to_table(self) -> str:
        """Plain-text table: name | status | expected | actual | citation."""
        header = ("name", "status", "expected", "actual", "citation")
        rows = [header] + [(r.name, r.status.value.upper(), r.expected, r.actual, r.citation) for r in self.records]
        widths = [min(max(len(row[i]) for row in rows), 48) for i in range(4)]
        lines = [f"{self.preset}: {self.description} [{self.status}, {self.duration:.1f}s]"]
        for row in rows:
            cells = [row[i][: widths[i]].ljust(widths[i]) for i in range(4)]
            lines.append(" | ".join(cells + [row[4]]))
        return "\n".join(lines) + "\n"


def _coords(v: FieldElement) -> str:
    return ",".join(format_rational(c) for c in v.coords)


class PresetRunner:
    """Executes the pipeline stages of one preset and collects check records.

    Stages run in order: classification, Galois group, order, identity,
    support hyperplanes, notes, unit group and domain. A ``QuarticHullError``
    inside a stage becomes a FAIL record (OBSERVED for exploratory presets)
    and the later stages carry on with whatever state is available.
    """

    def __init__(self, preset: Preset, precision_bits: Optional[int] = None, max_cells: Optional[int] = None):
        """Initialize the runner.

        Args:
            preset: the preset to run
            precision_bits: numeric precision (configuration key ``precision`` by default)
            max_cells: cell cap for the domain build
        """
        self.preset = preset
        self.field = FieldContext(preset.params, precision_bits)
        self.max_cells = max_cells
        self.lattice: Optional[IntegralLattice] = None
        self.group: Optional[UnitGroup] = None
        self.complex: Optional[CellComplex] = None
        self.facets: Dict[str, Facet] = {}
        self.records: List[CheckRecord] = []

    def _record(self, name: str, status: CheckStatus, expected: str = "", actual: str = "", citation: str = ""):
        self.records.append(
            CheckRecord(name=name, status=status, expected=expected, actual=actual, citation=citation)
        )

    def _check(self, name: str, expected, actual, citation: str = "", essential: bool = False) -> bool:
        """Compare and record; non-asserted presets only observe."""
        ok = expected == actual
        if self.preset.mode == PresetMode.EXPLORATORY or (
            self.preset.mode == PresetMode.CLOSURE_ONLY and not essential
        ):
            status = CheckStatus.OBSERVED
        else:
            status = CheckStatus.PASS if ok else CheckStatus.FAIL
        self._record(name, status, str(expected), str(actual), citation or self.preset.citation)
        if status == CheckStatus.FAIL:
            logger.warning(f"{self.preset.name}: {name} expected {expected}, got {actual}")
        return ok

    def _name_of(self, v: FieldElement) -> str:
        for name, text in self.preset.points.items():
            if FieldElement.parse(text) == v:
                return name
        return f"({_coords(v)})"

    def stages(self) -> List[Tuple[str, Callable[[], None]]]:
        if self.preset.mode == PresetMode.IDENTITY_ONLY:
            return [("classification", self.classify), ("identity", self.identity)]
        return [
            ("classification", self.classify),
            ("galois", self.galois),
            ("order", self.order),
            ("identity", self.identity),
            ("hyperplanes", self.hyperplanes),
            ("notes", self.notes),
            ("units", self.units),
            ("domain", self.domain),
        ]

    def run(self) -> Report:
        start = time.time()
        report = Report(
            preset=self.preset.name,
            description=self.preset.description,
            mode=self.preset.mode,
            field=str(self.preset.params),
            settings=config.settings(),
        )
        logger.info(f"Running preset '{self.preset.name}' ({self.preset.mode.value})")
        for name, stage in self.stages():
            try:
                stage()
            except QuarticHullError as e:
                logger.error(f"{self.preset.name}: stage {name} failed: {e}")
                status = CheckStatus.OBSERVED if self.preset.exploratory else CheckStatus.FAIL
                self._record(name, status, actual=f"{type(e).__name__}: {e}", citation=self.preset.citation)
        report.records = self.records
        report.duration = time.time() - start
        logger.info(f"Preset '{self.preset.name}' finished: {report.status} in {report.duration:.1f}s")
        return report

    def classify(self) -> None:
        expected = self.preset.classification.value
        if self.preset.c is not None:
            expected += f"(c={self.preset.c})"
        self._check("classification", expected, str(self.field.classification))

    def galois(self) -> None:
        if self.preset.generator is None:
            return
        sigma = self.field.automorphisms[0]
        self._check("generator sigma(x)", self.preset.generator, _coords(sigma.image_of_x))
        self._check("Galois group order", 4, len(self.field.galois_group))

    def order(self) -> None:
        self.lattice = preset_lattice(self.preset.lattice)
        self._check(f"lattice {self.lattice.name} is an order", True, self.lattice.verify_order(self.field))

    def identity(self) -> None:
        fixture = self.preset.identity
        if fixture is None:
            return
        y = FieldElement.parse(fixture.element)
        value = self.field.evaluate_polynomial(fixture.polynomial, y)
        self._check("polynomial identity", "0,0,0,0", _coords(value), fixture.citation, essential=True)

    def hyperplanes(self) -> None:
        if self.lattice is None:
            self._record("hyperplanes", CheckStatus.SKIPPED, actual="no lattice")
            return
        for fixture in self.preset.hyperplanes:
            self._hyperplane(fixture)

    def _hyperplane(self, fixture: HyperplaneFixture) -> None:
        assert self.lattice is not None
        functional = SupportFunctional.parse(fixture.functional)
        cert = verify_support(functional.phi, functional.level, self.lattice, self.field)
        label = str(cert.functional)
        self._check(f"{label} support", fixture.status.value, cert.status.value, fixture.citation)
        if not cert.is_valid:
            return
        points = cert.level_points
        on_level = set(points)
        if fixture.point_count is not None:
            self._check(f"{label} points", fixture.point_count, len(points), fixture.citation)
        if fixture.on_level:
            missing = [n for n in fixture.on_level if self.preset.point(n) not in on_level]
            self._check(f"{label} named points on level", "none missing", self._missing(missing), fixture.citation)
        polytope = hull3(points, cert.functional.phi)
        if polytope.dimension == 3:
            self.facets[label] = Facet(functional=cert.functional, polytope=polytope, points=points)
        if fixture.face_vector is not None:
            self._check(f"{label} face vector", fixture.face_vector, polytope.face_vector, fixture.citation)
        if fixture.face_sizes is not None:
            self._check(f"{label} face sizes", fixture.face_sizes, polytope.face_sizes(), fixture.citation)
        if fixture.vertices:
            expected = sorted(fixture.vertices)
            actual = sorted(self._name_of(v) for v in polytope.vertices)
            self._check(f"{label} vertices", ", ".join(expected), ", ".join(actual), fixture.citation)
        if fixture.non_vertices:
            absent = [n for n in fixture.non_vertices if self.preset.point(n) not in polytope.non_vertices]
            self._check(f"{label} non-vertex points", "none missing", self._missing(absent), fixture.citation)
        for name in fixture.units:
            self._check(f"N({name})", 1, self.field.norm(self.preset.point(name)), fixture.citation)
        for name, norm in fixture.norms.items():
            self._check(f"N({name})", norm, self.field.norm(self.preset.point(name)), fixture.citation)
        if fixture.split is not None:
            counts: Dict[str, int] = {}
            for v in points:
                key = format_rational(evaluate_functional(fixture.split.coefficients, v))
                counts[key] = counts.get(key, 0) + 1
            self._check(f"{label} plane split", fixture.split.counts, counts, fixture.citation)

    @staticmethod
    def _missing(names: Sequence[str]) -> str:
        return "missing: " + ", ".join(names) if names else "none missing"

    def notes(self) -> None:
        for note in self.preset.notes:
            self._record("note", CheckStatus.NOTE, actual=note.message, citation=note.citation)

    def units(self) -> None:
        if self.lattice is None:
            self._record("unit group", CheckStatus.SKIPPED, actual="no lattice")
            return
        self.group = discover_unit_group(self.lattice, self.field)
        self._record(
            "unit group generators",
            CheckStatus.OBSERVED,
            actual="; ".join(_coords(g) for g in self.group.generators),
            citation=self.preset.citation,
        )
        for name in self.preset.group_units:
            u = self.preset.point(name)
            self._check(f"{name} in U", True, self.group.contains(u))
            exponents = self.group.decompose(u)
            if exponents is not None:
                self._record(f"{name} over generators", CheckStatus.OBSERVED, actual=str(exponents))

    def _seed(self) -> Facet:
        assert self.lattice is not None
        functional = self.preset.seed_functional()
        if functional is None:
            return find_seed(self.lattice, self.field)
        return self.facets.get(str(functional)) or facet_polytope(
            functional.phi, functional.level, self.lattice, self.field
        )

    def domain(self) -> None:
        if self.lattice is None or self.group is None:
            self._record("domain", CheckStatus.SKIPPED, actual="no unit group")
            return
        seed = self._seed()
        self._record("seed facet", CheckStatus.OBSERVED, actual=str(seed.functional))
        try:
            self.complex = build_domain(self.field, self.lattice, self.group, seed, self.max_cells)
        except CellCapReachedError as e:
            if not self.preset.exploratory:
                raise
            self._record("domain", CheckStatus.OBSERVED, actual=f"cap reached at {e.cells} cells")
            return
        closure = verify_closed(self.complex)
        if self.preset.cells is not None:
            self._check("cells", self.preset.cells, closure.cells)
        else:
            self._record("cells", CheckStatus.OBSERVED, actual=str(closure.cells))
        if self.preset.identifications is not None:
            self._check("identifications", self.preset.identifications, closure.identifications)
        else:
            self._record("identifications", CheckStatus.OBSERVED, actual=str(closure.identifications))
        self._record("internal gluings", CheckStatus.OBSERVED, actual=str(closure.gluings))
        if self.preset.cell_face_vectors is not None:
            actual = sorted(c.polytope.face_vector for c in self.complex.cells)
            self._check("cell face vectors", sorted(self.preset.cell_face_vectors), actual)
        self._check("closed", True, closure.closed, essential=True)
        self._check("pseudo-manifold", True, closure.pseudo_manifold, essential=True)
        self._check("euler characteristic", 0, closure.euler_characteristic, essential=True)
        if self.preset.identification_units:
            self._identification_units()

    def _identification_units(self) -> None:
        assert self.complex is not None
        expected = {self.preset.unit_expression(e, self.field) for e in self.preset.identification_units}
        found = [i.unit for i in self.complex.proper_identifications()]
        matched = sum(1 for u in found if u in expected or self.field.inv(u) in expected)
        self._record(
            "identification units",
            CheckStatus.OBSERVED,
            expected=", ".join(self.preset.identification_units),
            actual=f"{matched} of {len(found)} match up to inverse",
        )


def run_preset(name: str, precision_bits: Optional[int] = None, max_cells: Optional[int] = None) -> Report:
    """Run one preset; raises ``UnknownPresetError`` for an unknown name."""
    return PresetRunner(get_preset(name), precision_bits, max_cells).run()


def run_all(precision_bits: Optional[int] = None, max_cells: Optional[int] = None) -> List[Report]:
    """Every non-exploratory registered preset, in registration order."""
    reports = []
    for name, mode in registry.list().items():
        if mode == PresetMode.EXPLORATORY.value:
            continue
        reports.append(run_preset(name, precision_bits, max_cells))
    return reports
