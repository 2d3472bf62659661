from collections import Counter

import pytest

from quartic_hull.exceptions import UnknownPresetError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, format_rational
from quartic_hull.geometry.facet import CertificateStatus, SupportFunctional
from quartic_hull.lattice.enumeration import evaluate_functional
from quartic_hull.lattice.order import preset_lattice
from quartic_hull.workflow.presets import (
    PresetMode,
    default_registry,
    get_preset,
    k11_identity_preset,
    klein9_preset,
    shintani_preset,
)

FIXED_PRESETS = ["k1", "k2", "f15_45", "klein9", "klein25", "klein49", "k11", "k11-identity", "shintani1", "shintani3"]


@pytest.fixture
def registry():
    """A fresh registry so on-demand presets do not leak between tests."""
    return default_registry()


class TestRegistry:
    """Test suite for the preset registry."""

    def test_fixed_presets(self, registry):
        listing = registry.list()
        assert set(FIXED_PRESETS) <= set(listing)
        assert listing["klein49"] == PresetMode.EXPLORATORY.value
        assert listing["k11"] == PresetMode.CLOSURE_ONLY.value
        assert listing["k11-identity"] == PresetMode.IDENTITY_ONLY.value
        assert listing["k1"] == PresetMode.FULL.value

    def test_family_on_demand(self, registry):
        preset = registry.get("Shintani(5)")
        assert preset is not None
        assert preset.name == "shintani5"
        assert preset.params.two_a == 29
        assert "shintani5" in registry.list()
        assert registry.get("shintani4") is None

    def test_unknown(self, registry):
        assert registry.get("nope") is None

    def test_get_preset(self):
        assert get_preset("K1").name == "k1"
        with pytest.raises(UnknownPresetError):
            get_preset("nope")

    def test_point_lookup(self):
        preset = get_preset("k1")
        assert preset.point("A9") == FieldElement(0, 1, 0, 0)
        with pytest.raises(KeyError):
            preset.point("Z")
        assert preset.seed_functional() == SupportFunctional.parse("1,1,0,1;1")
        assert get_preset("klein49").seed_functional() is None


@pytest.mark.parametrize("name", FIXED_PRESETS)
def test_named_points_lie_on_their_hyperplanes(name):
    """Every named level point satisfies its functional exactly."""
    preset = get_preset(name)
    for fixture in preset.hyperplanes:
        if fixture.status != CertificateStatus.VALID:
            continue
        functional = SupportFunctional.parse(fixture.functional)
        for point in fixture.on_level:
            assert functional.value(preset.point(point)) == functional.level, f"{fixture.functional} {point}"
        assert set(fixture.vertices) <= set(fixture.on_level)
        assert set(fixture.non_vertices) <= set(fixture.on_level)
        assert not set(fixture.vertices) & set(fixture.non_vertices)
        if fixture.point_count is not None and fixture.on_level:
            assert len(fixture.on_level) <= fixture.point_count


@pytest.mark.parametrize("name", ["k1", "k2", "f15_45", "klein9", "shintani1"])
def test_named_points_are_integral_and_positive(name):
    preset = get_preset(name)
    field = FieldContext(preset.params)
    lattice = preset_lattice(preset.lattice)
    for point, text in preset.points.items():
        v = FieldElement.parse(text)
        assert lattice.contains(v), point
        assert field.is_strictly_positive(v), point


def test_fixture_norms():
    """Norms quoted for the non-unit points of two facets."""
    k1 = get_preset("k1")
    field = FieldContext(k1.params)
    for point, norm in k1.hyperplanes[0].norms.items():
        assert field.norm(k1.point(point)) == norm
    k2 = get_preset("k2")
    assert FieldContext(k2.params).norm(k2.point("C")) == 2


def test_prism_plane_split():
    """The 14 prism points split 7 + 7 between two parallel planes."""
    preset = klein9_preset()
    fixture = preset.hyperplanes[0]
    values = Counter(
        format_rational(evaluate_functional(fixture.split.coefficients, preset.point(p))) for p in fixture.on_level
    )
    assert dict(values) == fixture.split.counts


def test_unit_expression():
    preset = klein9_preset()
    field = FieldContext(preset.params)
    quotient = preset.unit_expression("A1^-1*F", field)
    assert field.mul(quotient, preset.point("A1")) == preset.point("F")
    assert field.norm(preset.unit_expression("A1", field)) == 1


def test_family_divisions():
    """n = 3 adds two division points per lateral edge."""
    preset = shintani_preset(3)
    assert "AA1_1" in preset.points and "AA1_2" in preset.points
    assert preset.hyperplanes[0].point_count == 36
    assert preset.c == "39/2"
    assert preset.generator == "1/3,0,-11/3,0"


def test_identity_fixture():
    preset = k11_identity_preset()
    field = FieldContext(preset.params)
    y = FieldElement.parse(preset.identity.element)
    assert field.evaluate_polynomial(preset.identity.polynomial, y).is_zero()
