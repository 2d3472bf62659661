"""Presets with reference data and the report that checks them."""

from quartic_hull.workflow.presets import Preset, PresetMode, PresetRegistry, get_preset, registry
from quartic_hull.workflow.report import CheckRecord, CheckStatus, PresetRunner, Report, run_all, run_preset

__all__ = [
    "CheckRecord",
    "CheckStatus",
    "Preset",
    "PresetMode",
    "PresetRegistry",
    "PresetRunner",
    "Report",
    "get_preset",
    "registry",
    "run_all",
    "run_preset",
]
