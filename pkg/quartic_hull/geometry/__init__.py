"""Exact hulls, support hyperplanes and facets of the boundary."""

from quartic_hull.geometry.facet import (
    CertificateStatus,
    Facet,
    Ridge,
    SupportCertificate,
    SupportFunctional,
    contains_point,
    facet_polytope,
    find_seed,
    pivot,
    rotate,
    to_off,
    trace_functional,
    verify_support,
)
from quartic_hull.geometry.hull import FaceLattice, hull3, hull_2d

__all__ = [
    "CertificateStatus",
    "FaceLattice",
    "Facet",
    "Ridge",
    "SupportCertificate",
    "SupportFunctional",
    "contains_point",
    "facet_polytope",
    "find_seed",
    "hull3",
    "hull_2d",
    "pivot",
    "rotate",
    "to_off",
    "trace_functional",
    "verify_support",
]
