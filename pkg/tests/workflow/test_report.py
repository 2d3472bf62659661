import json

import pytest

from quartic_hull.exceptions import UnknownPresetError
from quartic_hull.utils.config import config
from quartic_hull.workflow.presets import get_preset
from quartic_hull.workflow.report import CheckRecord, CheckStatus, PresetRunner, Report, run_preset


class TestPresetRunner:
    """Test suite for preset runs and their reports."""

    def test_identity_preset(self):
        report = run_preset("k11-identity")
        assert report.passed
        assert report.status == "PASS"
        assert [r.name for r in report.records] == ["classification", "polynomial identity"]
        assert all(r.status == CheckStatus.PASS for r in report.records)
        assert report.records[0].actual == "cyclic(c=5/2)"

    def test_report_serialization(self):
        report = run_preset("k11-identity")
        data = json.loads(report.model_dump_json())
        assert data["passed"] is True
        assert data["status"] == "PASS"
        assert data["settings"]["max_cells"] >= 1
        table = report.to_table()
        assert table.startswith("k11-identity:")
        assert "PASS" in table

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError):
            run_preset("nope")

    def test_closure_only_observes(self):
        """Non-essential checks of a closure-only preset never fail."""
        runner = PresetRunner(get_preset("k11"))
        runner._check("cells", 1, 2)
        runner._check("closed", True, False, essential=True)
        assert runner.records[0].status == CheckStatus.OBSERVED
        assert runner.records[1].status == CheckStatus.FAIL

    def test_exploratory_observes(self):
        runner = PresetRunner(get_preset("klein49"))
        runner._check("closed", True, False, essential=True)
        assert runner.records[0].status == CheckStatus.OBSERVED

    def test_failures(self):
        report = Report(
            preset="x",
            description="",
            mode=get_preset("k1").mode,
            field="x^4 - 4x^2 + 1",
            settings=config.settings(),
            records=[
                CheckRecord(name="a", status=CheckStatus.PASS),
                CheckRecord(name="b", status=CheckStatus.FAIL, expected="1", actual="2"),
                CheckRecord(name="c", status=CheckStatus.NOTE),
            ],
        )
        assert not report.passed
        assert report.status == "FAIL"
        assert [r.name for r in report.failures()] == ["b"]

    def test_classification_stage(self):
        runner = PresetRunner(get_preset("k2"))
        runner.classify()
        runner.galois()
        assert [r.status for r in runner.records] == [CheckStatus.PASS] * 3


@pytest.mark.slow
@pytest.mark.parametrize("name", ["k1", "k2", "f15_45", "klein9", "shintani1"])
def test_preset_passes(name):
    report = run_preset(name)
    assert report.failures() == []
    assert report.passed


@pytest.mark.slow
@pytest.mark.parametrize("name", ["klein25", "shintani3"])
def test_larger_presets_pass(name):
    report = run_preset(name)
    assert report.failures() == []
    assert report.passed


@pytest.mark.slow
def test_k11_closes():
    """Only closure is fixed for the full ring of integers of x^4 - 125x^2 + 125."""
    report = run_preset("k11")
    assert report.passed
    closed = [r for r in report.records if r.name == "closed"]
    assert [r.status for r in closed] == [CheckStatus.PASS]


@pytest.mark.slow
def test_klein49_stops_at_cap():
    """The exploratory preset records the cap as an observation instead of failing."""
    report = run_preset("klein49", max_cells=1)
    assert report.passed
    domain = [r for r in report.records if r.name == "domain"]
    assert len(domain) == 1
    assert domain[0].status == CheckStatus.OBSERVED


@pytest.mark.slow
def test_cap_fails_a_full_preset():
    report = run_preset("k1", max_cells=1)
    assert not report.passed
    assert [r.name for r in report.failures()] == ["domain"]
    assert "CellCapReachedError" in report.failures()[0].actual
