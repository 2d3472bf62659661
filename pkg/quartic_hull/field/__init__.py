"""Exact arithmetic in totally real biquadratic quartic fields."""

from quartic_hull.field.arithmetic import (
    inv,
    is_strictly_positive,
    mul,
    mult_matrix,
    norm,
    norm_trace,
    power,
    trace,
    trace_form,
)
from quartic_hull.field.classification import classify_biquadratic, is_reducible, rational_sqrt
from quartic_hull.field.closed_forms import shintani_generator_image, shintani_params, shintani_vertices
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, format_rational, parse_rational
from quartic_hull.field.galois import apply_automorphism, generator_automorphisms, root_permutation
from quartic_hull.field.models import Automorphism, Classification, FieldClass, FieldParams, RootSystem, SignVector
from quartic_hull.field.roots import isolate_roots, numeric_conjugates

__all__ = [
    "Automorphism",
    "Classification",
    "FieldClass",
    "FieldContext",
    "FieldElement",
    "FieldParams",
    "RootSystem",
    "SignVector",
    "apply_automorphism",
    "classify_biquadratic",
    "format_rational",
    "generator_automorphisms",
    "inv",
    "is_reducible",
    "is_strictly_positive",
    "isolate_roots",
    "mul",
    "mult_matrix",
    "norm",
    "norm_trace",
    "numeric_conjugates",
    "parse_rational",
    "power",
    "rational_sqrt",
    "root_permutation",
    "shintani_generator_image",
    "shintani_params",
    "shintani_vertices",
    "trace",
    "trace_form",
]
