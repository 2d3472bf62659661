"""Units and the totally positive unit group."""

from quartic_hull.units.group import (
    LogVector,
    UnitGroup,
    canonicalize_cell,
    discover_unit_group,
    is_unit,
    log_embedding,
    reconstruct_unit,
    search_units,
    totally_positive_basis,
)

__all__ = [
    "LogVector",
    "UnitGroup",
    "canonicalize_cell",
    "discover_unit_group",
    "is_unit",
    "log_embedding",
    "reconstruct_unit",
    "search_units",
    "totally_positive_basis",
]
