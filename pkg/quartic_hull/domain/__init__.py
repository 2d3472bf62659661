"""Fundamental domains: cell complexes with face pairings."""

from quartic_hull.domain.complex import (
    CellComplex,
    ClosureReport,
    ComplexExport,
    DomainBuilder,
    Identification,
    UnionFind,
    build_domain,
    consolidate,
    match_face,
    verify_closed,
)
from quartic_hull.geometry.facet import find_seed

__all__ = [
    "CellComplex",
    "ClosureReport",
    "ComplexExport",
    "DomainBuilder",
    "Identification",
    "UnionFind",
    "build_domain",
    "consolidate",
    "find_seed",
    "match_face",
    "verify_closed",
]
