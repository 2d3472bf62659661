"""Certified root isolation and numeric conjugates."""

import logging
from fractions import Fraction
from typing import List, Tuple

import mpmath
import sympy

from quartic_hull.exceptions import NotGaloisError
from quartic_hull.field.element import FieldElement
from quartic_hull.field.models import FieldParams, RootSystem

logger = logging.getLogger(__name__)

_x = sympy.Symbol("x")


def _to_fraction(value: sympy.Rational) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def isolate_roots(params: FieldParams, precision: Fraction) -> RootSystem:
    """Isolate the four real roots in rational intervals of width <= precision.

    Positive roots are isolated by sympy's real-root isolation and refined until
    their intervals exclude 0; the negative intervals are their mirrors, so the
    four intervals are pairwise disjoint.

    Raises:
        NotGaloisError: if d <= 0 (the quartic is not totally real)
    """
    if params.d <= 0:
        raise NotGaloisError(f"{params} is not totally real (d = {params.d})")
    poly = sympy.Poly(list(params.polynomial), _x)
    eps = sympy.Rational(precision.numerator, precision.denominator)
    raw = poly.intervals(eps=eps)
    positive: List[Tuple[sympy.Rational, sympy.Rational]] = []
    for (lo, hi), _multiplicity in raw:
        # b >= 1, so 0 is never a root and every interval can be pulled off it
        while lo <= 0 <= hi:
            lo, hi = poly.refine_root(lo, hi, eps=(hi - lo) / 4)
        if lo > 0:
            positive.append((lo, hi))
    if len(positive) != 2:
        raise NotGaloisError(f"{params}: expected 2 positive roots, isolated {len(positive)}")
    positive.sort(reverse=True)
    (lo1, hi1), (lo2, hi2) = positive
    while hi2 >= lo1:
        lo1, hi1 = poly.refine_root(lo1, hi1, eps=(hi1 - lo1) / 4)
        lo2, hi2 = poly.refine_root(lo2, hi2, eps=(hi2 - lo2) / 4)
    lo1, hi1, lo2, hi2 = (_to_fraction(v) for v in (lo1, hi1, lo2, hi2))
    intervals = ((lo1, hi1), (lo2, hi2), (-hi2, -lo2), (-hi1, -lo1))
    logger.debug(f"Isolated roots of {params}: {intervals}")
    return RootSystem(intervals=intervals, precision=precision)


def numeric_roots(params: FieldParams, dps: int = 50) -> List[mpmath.mpf]:
    """x1 > x2 > x3 > x4 from the closed forms +-sqrt(a +- sqrt(d))."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(params.two_a) / 2
        sd = mpmath.sqrt(a * a - params.b)
        x1 = mpmath.sqrt(a + sd)
        x2 = mpmath.sqrt(a - sd)
        return [+x1, +x2, -x2, -x1]


def _mp(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator


def numeric_conjugates(v: FieldElement, params: FieldParams, dps: int = 50) -> List[mpmath.mpf]:
    """mpmath values of v at x1..x4."""
    with mpmath.workdps(dps):
        k, l, m, n = (_mp(c) for c in v.coords)
        return [((k * r + l) * r + m) * r + n for r in numeric_roots(params, dps)]


def to_interval(value) -> mpmath.iv.mpf:
    """An mpmath interval enclosing a rational (or passing an interval through)."""
    if hasattr(value, "_mpi_"):
        return value
    q = Fraction(value)
    return mpmath.iv.mpf(q.numerator) / q.denominator


def interval_conjugates(v: FieldElement, system: RootSystem) -> List[mpmath.iv.mpf]:
    """Intervals enclosing v(x1)..v(x4), evaluated over the isolating intervals."""
    k, l, m, n = (to_interval(c) for c in v.coords)
    result = []
    for lo, hi in system.intervals:
        r = mpmath.iv.mpf([to_interval(lo), to_interval(hi)])
        result.append(((k * r + l) * r + m) * r + n)
    return result
