import importlib.util
import logging
from pathlib import Path
from types import SimpleNamespace
from unittest.mock import patch

import pytest

from quartic_hull.cli.app import EXIT_ERROR, EXIT_FAILED, EXIT_OK
from quartic_hull.exceptions import CellCapReachedError

SCRIPT = Path(__file__).resolve().parents[2] / "scripts" / "verify_presets.py"


@pytest.fixture
def script():
    """Load scripts/verify_presets.py as a module without running it."""
    handlers = list(logging.getLogger().handlers)
    spec = importlib.util.spec_from_file_location("verify_presets", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    assert logging.getLogger().handlers == handlers
    return module


def _report(name, passed):
    return SimpleNamespace(preset=name, passed=passed, to_table=lambda: f"{name}: {'PASS' if passed else 'FAIL'}")


class TestVerifyScript:
    """Test suite for the preset verification script."""

    def test_all_passed(self, script, capsys):
        with patch.object(script, "run_all", return_value=[_report("k1", True), _report("k2", True)]):
            assert script.main() == EXIT_OK
        assert "k2: PASS" in capsys.readouterr().out

    def test_failed_preset(self, script):
        with patch.object(script, "run_all", return_value=[_report("k1", True), _report("k2", False)]):
            assert script.main() == EXIT_FAILED

    def test_package_error_is_reported(self, script):
        with patch.object(script, "run_all", side_effect=CellCapReachedError("cap", 64)):
            assert script.main() == EXIT_ERROR

    def test_other_errors_propagate(self, script):
        with patch.object(script, "run_all", side_effect=RuntimeError("bug")):
            with pytest.raises(RuntimeError):
                script.main()
