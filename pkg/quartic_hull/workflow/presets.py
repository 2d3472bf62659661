"""Preset fields and the reference data every preset run is checked against."""

import logging
import re
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from quartic_hull.exceptions import UnknownPresetError
from quartic_hull.field.closed_forms import shintani_generator_image, shintani_params, shintani_vertices
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, format_rational
from quartic_hull.field.models import FieldClass, FieldParams
from quartic_hull.geometry.facet import CertificateStatus, SupportFunctional

logger = logging.getLogger(__name__)

FaceVector = Tuple[int, int, int]

TETRAHEDRON: FaceVector = (4, 6, 4)
OCTAHEDRON: FaceVector = (6, 12, 8)
DECAHEDRON: FaceVector = (8, 16, 10)
HEXAGONAL_PRISM: FaceVector = (12, 22, 12)


class PresetMode(str, Enum):
    """How much of a preset's pipeline is asserted."""

    FULL = "full"
    CLOSURE_ONLY = "closure_only"
    IDENTITY_ONLY = "identity_only"
    EXPLORATORY = "exploratory"


class PlaneSplit(BaseModel):
    """Level-set points counted by the value of a second functional."""

    coefficients: Tuple[int, int, int, int]
    counts: Dict[str, int]


class HyperplaneFixture(BaseModel):
    """Expected outcome of one support-hyperplane check."""

    functional: str
    citation: str
    status: CertificateStatus = CertificateStatus.VALID
    point_count: Optional[int] = None
    face_vector: Optional[FaceVector] = None
    face_sizes: Optional[List[int]] = None
    on_level: List[str] = Field(default_factory=list)
    vertices: List[str] = Field(default_factory=list)
    non_vertices: List[str] = Field(default_factory=list)
    units: List[str] = Field(default_factory=list)
    norms: Dict[str, int] = Field(default_factory=dict)
    split: Optional[PlaneSplit] = None


class Note(BaseModel):
    """A documented deviation from the printed reference data."""

    message: str
    citation: str


class IdentityFixture(BaseModel):
    """poly(element) == 0 in the field of the preset."""

    element: str
    polynomial: List[int]
    citation: str


class Preset(BaseModel):
    """A field, its order, a seed facet and the data to compare against."""

    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    params: FieldParams
    lattice: str
    mode: PresetMode = PresetMode.FULL
    classification: FieldClass
    c: Optional[str] = None
    generator: Optional[str] = None
    seed: Optional[str] = None
    points: Dict[str, str] = Field(default_factory=dict)
    hyperplanes: List[HyperplaneFixture] = Field(default_factory=list)
    group_units: List[str] = Field(default_factory=list)
    cells: Optional[int] = None
    identifications: Optional[int] = None
    cell_face_vectors: Optional[List[FaceVector]] = None
    identification_units: List[str] = Field(default_factory=list)
    notes: List[Note] = Field(default_factory=list)
    identity: Optional[IdentityFixture] = None
    citation: str = ""

    @property
    def exploratory(self) -> bool:
        return self.mode == PresetMode.EXPLORATORY

    def point(self, name: str) -> FieldElement:
        """A named point of the fixture data."""
        if name not in self.points:
            raise KeyError(f"preset {self.name} has no point named {name!r}")
        return FieldElement.parse(self.points[name])

    def seed_functional(self) -> Optional[SupportFunctional]:
        return SupportFunctional.parse(self.seed) if self.seed else None

    def unit_expression(self, expression: str, field: FieldContext) -> FieldElement:
        """Evaluate a product such as ``"A1^-1*F"`` over named points."""
        result = FieldElement.one()
        for token in expression.split("*"):
            name, _, exponent = token.strip().partition("^")
            value = self.point(name)
            result = field.mul(result, field.power(value, int(exponent) if exponent else 1))
        return result


def _coords(v: FieldElement) -> str:
    return ",".join(format_rational(c) for c in v.coords)


class PresetRegistry:
    """Registry for presets; the odd members of the cyclic family are built on demand."""

    _SHINTANI = re.compile(r"^shintani\(?(\d+)\)?$")

    def __init__(self):
        """Initialize the preset registry."""
        self.presets: Dict[str, Preset] = {}

    def register(self, preset: Preset) -> bool:
        """Register a preset under its name.

        Args:
            preset: The preset to register

        Returns:
            True if registration was successful
        """
        if preset.name in self.presets:
            logger.warning(f"Preset with name '{preset.name}' already exists. Overwriting.")
        self.presets[preset.name] = preset
        logger.debug(f"Registered preset '{preset.name}' ({preset.mode.value})")
        return True

    def get(self, name: str) -> Optional[Preset]:
        """Get a preset by name.

        Args:
            name: The name of the preset, e.g. ``k1`` or ``shintani3``

        Returns:
            The preset if found, None otherwise
        """
        key = name.strip().lower()
        match = self._SHINTANI.match(key)
        if match and int(match.group(1)) % 2 == 1:
            key = f"shintani{int(match.group(1))}"
            if key not in self.presets:
                self.register(shintani_preset(int(match.group(1))))
        if key not in self.presets:
            logger.error(f"Preset '{name}' not found in registry")
            return None
        return self.presets[key]

    def list(self) -> Dict[str, str]:
        """List all registered presets.

        Returns:
            Dict mapping preset names to their modes
        """
        return {name: preset.mode.value for name, preset in self.presets.items()}


def k1_preset() -> Preset:
    points = {
        "A1": "-2,0,6,3",
        "A2": "-2,3,2,0",
        "A3": "-1,0,3,2",
        "A4": "-1,0,4,2",
        "A5": "-1,1,2,1",
        "A6": "-1,2,0,0",
        "A7": "-1,2,1,0",
        "A8": "0,0,0,1",
        "A9": "0,1,0,0",
        "A10": "0,0,-1,2",
        "A11": "-4,-2,15,8",
    }
    octahedron = ["A1", "A2", "A4", "A6", "A8", "A9"]
    return Preset(
        name="k1",
        description="x^4 - 4x^2 + 1, Klein group, integers Z[x]",
        params=FieldParams(two_a=4, b=1),
        lattice="k1",
        classification=FieldClass.KLEIN,
        c="1",
        generator="1,0,-4,0",
        seed="1,1,0,1;1",
        points=points,
        hyperplanes=[
            HyperplaneFixture(
                functional="1,1,0,1;1",
                citation="k + l + n = 1 contains 9 strictly positive integers spanning an octahedron",
                point_count=9,
                face_vector=OCTAHEDRON,
                on_level=list(points)[:9],
                vertices=octahedron,
                non_vertices=["A3", "A5", "A7"],
                units=octahedron,
                norms={"A3": 4, "A5": 9, "A7": 4},
            ),
            HyperplaneFixture(
                functional="8,5,2,2;2",
                citation="4k + 5l/2 + m + n = 1 cuts the tetrahedron A1 A6 A8 A10 with A3 on an edge",
                point_count=5,
                face_vector=TETRAHEDRON,
                on_level=["A1", "A3", "A6", "A8", "A10"],
                vertices=["A1", "A6", "A8", "A10"],
                non_vertices=["A3"],
                units=["A10"],
            ),
            HyperplaneFixture(
                functional="2,3,0,2;2",
                citation="second tetrahedron through A1, A3, A4, A8 and A11",
                point_count=5,
                face_vector=TETRAHEDRON,
                on_level=["A1", "A3", "A4", "A8", "A11"],
                vertices=["A1", "A4", "A8", "A11"],
                non_vertices=["A3"],
            ),
            HyperplaneFixture(
                functional="2,1,0,2;2",
                citation="the printed form k + l/2 + n = 1 of the second tetrahedron",
                status=CertificateStatus.LOWER_POINT,
            ),
        ],
        group_units=octahedron + ["A10"],
        cells=3,
        identifications=6,
        cell_face_vectors=[TETRAHEDRON, TETRAHEDRON, OCTAHEDRON],
        notes=[
            Note(
                message=(
                    "the second tetrahedron's hyperplane is printed as k + l/2 + n = 1, which puts A9 below "
                    "level and misses A11; the listed points satisfy k + 3l/2 + n = 1, used here"
                ),
                citation="x^4 - 4x^2 + 1: second tetrahedron",
            )
        ],
        citation="x^4 - 4x^2 + 1: octahedron and two tetrahedra, six identifications",
    )


def k2_preset() -> Preset:
    points = {
        "A": "0,0,0,1",
        "B": "0,2,0,-1",
        "AB": "0,1,0,0",
        "C": "1,0,-3,2",
        "D": "0,1,-2,1",
        "E": "-2,4,1,-2",
        "F": "-2,3,2,-1",
        "G": "-1,0,3,2",
        "H": "0,1,2,1",
        "K": "2,4,-1,-2",
        "L": "2,3,-2,-1",
        "M": "0,0,-1,2",
        "N": "-2,4,0,-1",
        "O": "-1,2,0,0",
    }
    planes = [
        ("1,2,1,2;2", "C", "D"),
        ("3,4,2,4;4", "D", "E"),
        ("1,2,0,2;2", "E", "F"),
        ("1,4,-1,4;4", "F", "G"),
        ("-1,2,-1,2;2", "G", "H"),
        ("-3,4,-2,4;4", "H", "K"),
        ("-1,2,0,2;2", "K", "L"),
        ("-1,4,1,4;4", "L", "C"),
    ]
    norm_two = {"C", "E", "G", "K"}
    hyperplanes = [
        HyperplaneFixture(
            functional=functional,
            citation=f"tetrahedron {i} around the edge AB: A, B, {p}, {q} and the midpoint of AB",
            point_count=5,
            face_vector=TETRAHEDRON,
            on_level=["A", "B", "AB", p, q],
            vertices=["A", "B", p, q],
            non_vertices=["AB"],
            units=[x for x in ("A", "B", p, q) if x not in norm_two],
            norms={x: 2 for x in (p, q) if x in norm_two},
        )
        for i, (functional, p, q) in enumerate(planes, start=1)
    ]
    hyperplanes.append(
        HyperplaneFixture(
            functional="3,2,1,1;1",
            citation="3k + 2l + m + n = 1 holds an octahedron with center (-1,2,0,0)",
            point_count=7,
            face_vector=OCTAHEDRON,
            on_level=["A", "D", "E", "F", "M", "N", "O"],
            vertices=["A", "D", "E", "F", "M", "N"],
            non_vertices=["O"],
            units=["A", "D", "F", "N"],
            norms={"E": 2, "M": 2},
        )
    )
    return Preset(
        name="k2",
        description="x^4 - 4x^2 + 2, cyclic group, integers Z[x]",
        params=FieldParams(two_a=4, b=2),
        lattice="k2",
        classification=FieldClass.CYCLIC,
        c="2",
        generator="1,0,-3,0",
        seed="1,2,1,2;2",
        points=points,
        hyperplanes=hyperplanes,
        group_units=["A", "B", "D", "F", "H", "L", "N"],
        cells=9,
        identifications=10,
        cell_face_vectors=[TETRAHEDRON] * 8 + [OCTAHEDRON],
        notes=[
            Note(
                message=(
                    "point B is printed as (0,-2,0,-1), which is not strictly positive and misses every "
                    "tetrahedron's hyperplane; (0,2,0,-1) satisfies all eight and is used here"
                ),
                citation="x^4 - 4x^2 + 2: the common edge AB",
            ),
            Note(
                message="the hyperplanes printed with a negative constant are stored with level > 0",
                citation="x^4 - 4x^2 + 2: tetrahedra 5 to 8",
            ),
        ],
        citation="x^4 - 4x^2 + 2: eight tetrahedra around AB and an octahedron, ten identifications",
    )


def f15_45_preset() -> Preset:
    points = {
        "A": "0,0,0,1",
        "B": "1/6,-1/3,-2,9/2",
        "C": "1/3,-1/2,-7/2,13/2",
        "D": "1/6,-1/6,-3/2,3",
        "A1": "0,1/3,0,-1",
        "B1": "0,1/6,-1/2,1/2",
        "C1": "1/6,1/6,-3/2,1",
        "D1": "1/6,1/3,-1,-1/2",
    }
    names = list(points)
    return Preset(
        name="f15_45",
        description="x^4 - 15x^2 + 45, cyclic group",
        params=FieldParams(two_a=15, b=45),
        lattice="f15_45",
        classification=FieldClass.CYCLIC,
        c="45/2",
        generator="1/3,0,-3,0",
        seed="3,6,1,1;1",
        points=points,
        hyperplanes=[
            HyperplaneFixture(
                functional="3,6,1,1;1",
                citation="3k + 6l + m + n = 1: a decahedron with two parallelogram bases, all 8 vertices units",
                point_count=8,
                face_vector=DECAHEDRON,
                face_sizes=[3] * 8 + [4] * 2,
                on_level=names,
                vertices=names,
                units=names,
            )
        ],
        group_units=names,
        cells=1,
        identifications=5,
        cell_face_vectors=[DECAHEDRON],
        identification_units=["A1", "D", "D1", "B", "B1"],
        citation="x^4 - 15x^2 + 45: one decahedron, bases and four triangle pairs identified",
    )


def shintani_preset(n: int) -> Preset:
    """The family member p_n = x^4 - (n^2 + 4)x^2 + n^2 + 4 for odd n."""
    params = shintani_params(n)
    closed = shintani_vertices((n - 1) // 2)
    points = {name: _coords(v) for name, v in closed.items()}
    points["E"] = _coords((closed["A"] + closed["C"]) / 2)
    points["E1"] = _coords((closed["A1"] + closed["C1"]) / 2)
    divisions = []
    for base in ("A", "B", "C", "D"):
        for i in range(1, n):
            name = f"{base}{base}1_{i}"
            points[name] = _coords((closed[base] * (n - i) + closed[f"{base}1"] * i) / n)
            divisions.append(name)
    names = list(closed)
    counts = {1: 10, 3: 36}
    return Preset(
        name=f"shintani{n}",
        description=f"x^4 - {params.two_a}x^2 + {params.b}, cyclic family member n = {n}",
        params=params,
        lattice=f"shintani{n}",
        classification=FieldClass.CYCLIC,
        c=format_rational(Fraction(n * (n * n + 4), 2)),
        generator=_coords(shintani_generator_image(n)),
        seed="2,2,1,1;1",
        points=points,
        hyperplanes=[
            HyperplaneFixture(
                functional="2,2,1,1;1",
                citation=(
                    "2k + 2l + m + n = 1: the decahedron with closed-form unit vertices, base centers and "
                    "points dividing the lateral edges into n equal parts"
                ),
                point_count=counts.get(n),
                face_vector=DECAHEDRON,
                face_sizes=[3] * 8 + [4] * 2,
                on_level=names + ["E", "E1"] + divisions,
                vertices=names,
                non_vertices=["E", "E1"] + divisions,
                units=names,
            )
        ],
        group_units=names,
        cells=1,
        identifications=5,
        cell_face_vectors=[DECAHEDRON],
        citation=f"family member n = {n}: the decahedron of the general case",
    )


def _klein_points() -> Dict[str, str]:
    return {
        "A": "0,0,0,1",
        "B": "0,1/3,-1,1",
        "C": "-1/3,4/3,-1,0",
        "D": "-2/3,2,0,1",
        "E": "-2/3,5/3,1,-1",
        "F": "-1/3,2/3,1,0",
        "G": "-1/3,1,0,0",
        "A1": "0,1/3,0,0",
        "B1": "-1/3,4/3,0,-1",
        "C1": "-4/3,4,1,-4",
        "D1": "-2,17/3,2,-6",
        "E1": "-5/3,14/3,2,-5",
        "F1": "-2/3,2,1,-2",
        "G1": "-1,3,1,-3",
        "H": "-1/3,0,2,2",
    }


def klein9_preset() -> Preset:
    points = _klein_points()
    hexagons = ["A", "B", "C", "D", "E", "F", "A1", "B1", "C1", "D1", "E1", "F1"]
    units = ["A", "C", "D", "F", "A1", "C1", "D1", "F1"]
    return Preset(
        name="klein9",
        description="x^4 - 9x^2 + 9, Klein group, 3k, 3l, m, n integral",
        params=FieldParams(two_a=9, b=9),
        lattice="klein9",
        classification=FieldClass.KLEIN,
        c="3",
        generator="1/3,0,-3,0",
        seed="6,3,1,1;1",
        points=points,
        hyperplanes=[
            HyperplaneFixture(
                functional="6,3,1,1;1",
                citation="6k + 3l + m + n = 1: 14 points on two parallel planes, a hexagonal prism",
                point_count=14,
                face_vector=HEXAGONAL_PRISM,
                face_sizes=[3] * 8 + [4] * 2 + [6] * 2,
                on_level=hexagons + ["G", "G1"],
                vertices=hexagons,
                non_vertices=["G", "G1"],
                units=units,
                norms={"B": 4, "E": 4, "B1": 4, "E1": 4, "G": 9, "G1": 9},
                split=PlaneSplit(coefficients=(9, 3, 1, 0), counts={"0": 7, "1": 7}),
            ),
            HyperplaneFixture(
                functional="3,3,0,1;1",
                citation="3k + 3l + n = 1: the tetrahedron A A1 F H glued to a side face",
                point_count=4,
                face_vector=TETRAHEDRON,
                on_level=["A", "A1", "F", "H"],
                vertices=["A", "A1", "F", "H"],
                units=["H"],
            ),
        ],
        group_units=units + ["H"],
        cells=2,
        identifications=7,
        cell_face_vectors=[TETRAHEDRON, HEXAGONAL_PRISM],
        identification_units=["A1", "F", "A1^-1*F", "C^-1*D", "C^-1*A", "C^-1*A1", "A1^-1*A"],
        citation="x^4 - 9x^2 + 9: a prism and a tetrahedron, seven identifications",
    )


def klein25_preset() -> Preset:
    return Preset(
        name="klein25",
        description="x^4 - 25x^2 + 25, Klein group, 5k, 5l, m, n integral",
        params=FieldParams(two_a=25, b=25),
        lattice="klein25",
        classification=FieldClass.KLEIN,
        c="5",
        generator="1/5,0,-5,0",
        seed="5,5,1,1;1",
        hyperplanes=[
            HyperplaneFixture(
                functional="5,5,1,1;1",
                citation="5k + 5l + m + n = 1 contains 14 points",
                point_count=14,
                face_vector=HEXAGONAL_PRISM,
            ),
            HyperplaneFixture(
                functional="-75,20,-3,1;1",
                citation="-75k + 20l - 3m + n = 1 contains 4 points",
                point_count=4,
                face_vector=TETRAHEDRON,
            ),
        ],
        cells=2,
        identifications=7,
        cell_face_vectors=[TETRAHEDRON, HEXAGONAL_PRISM],
        citation="x^4 - 25x^2 + 25: the same combinatorics as x^4 - 9x^2 + 9",
    )


def klein49_preset() -> Preset:
    return Preset(
        name="klein49",
        description="x^4 - 49x^2 + 49, Klein group; no reference values",
        params=FieldParams(two_a=49, b=49),
        lattice="klein49",
        mode=PresetMode.EXPLORATORY,
        classification=FieldClass.KLEIN,
        c="7",
        generator="1/7,0,-7,0",
        citation="x^4 - 49x^2 + 49 is described only as significantly more complex",
    )


def k11_preset() -> Preset:
    params = shintani_params(11)
    return Preset(
        name="k11",
        description="x^4 - 125x^2 + 125 with its full ring of integers",
        params=params,
        lattice="k11",
        mode=PresetMode.CLOSURE_ONLY,
        classification=FieldClass.CYCLIC,
        c=format_rational(Fraction(11 * 125, 2)),
        generator=_coords(shintani_generator_image(11)),
        citation="the family prism for n = 11 contains several fundamental decahedra; only closure is fixed",
    )


def k11_identity_preset() -> Preset:
    return Preset(
        name="k11-identity",
        description="x^4 - 5x^2 + 5 contains a root of x^4 - 125x^2 + 125",
        params=shintani_params(1),
        lattice="shintani1",
        mode=PresetMode.IDENTITY_ONLY,
        classification=FieldClass.CYCLIC,
        c="5/2",
        identity=IdentityFixture(
            element="-3,0,5,0",
            polynomial=[1, 0, -125, 0, 125],
            citation="y = -3x^3 + 5x in Q[x]/(x^4 - 5x^2 + 5) satisfies y^4 - 125y^2 + 125 = 0",
        ),
        citation="the family members n = 1 and n = 11 define the same field",
    )


def default_registry() -> PresetRegistry:
    """A registry holding every fixed preset plus shintani1 and shintani3."""
    registry = PresetRegistry()
    for build in (
        k1_preset,
        k2_preset,
        f15_45_preset,
        klein9_preset,
        klein25_preset,
        klein49_preset,
        k11_preset,
        k11_identity_preset,
    ):
        registry.register(build())
    for n in (1, 3):
        registry.register(shintani_preset(n))
    return registry


registry = default_registry()


def get_preset(name: str) -> Preset:
    """Look up a preset.

    Raises:
        UnknownPresetError: for an unknown name
    """
    preset = registry.get(name)
    if preset is None:
        raise UnknownPresetError(f"unknown preset {name!r}; known: {', '.join(sorted(registry.list()))}")
    return preset
