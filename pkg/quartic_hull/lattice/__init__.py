"""Integral lattices and certified slab enumeration."""

from quartic_hull.lattice.enumeration import (
    RegionScan,
    SlabEnumeration,
    brute_force_slab,
    enumerate_region,
    enumerate_slab,
    evaluate_functional,
    points_on_level,
    reduced_basis,
)
from quartic_hull.lattice.order import (
    LATTICE_PRESETS,
    IntegralLattice,
    dump_lattice_file,
    load_lattice_file,
    preset_lattice,
)

__all__ = [
    "IntegralLattice",
    "LATTICE_PRESETS",
    "RegionScan",
    "SlabEnumeration",
    "brute_force_slab",
    "dump_lattice_file",
    "enumerate_region",
    "enumerate_slab",
    "evaluate_functional",
    "load_lattice_file",
    "points_on_level",
    "preset_lattice",
    "reduced_basis",
]
