"""Galois classification of biquadratic quartics x^4 - 2a x^2 + b."""

import logging
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from quartic_hull.field.models import Classification, FieldClass, FieldParams

logger = logging.getLogger(__name__)


def rational_sqrt(value: Union[int, Fraction]) -> Optional[Fraction]:
    """Nonnegative rational square root of ``value`` if it is a rational square."""
    q = Fraction(value)
    if q < 0:
        return None
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def is_rational_square(value: Union[int, Fraction]) -> bool:
    return rational_sqrt(value) is not None


def is_reducible(params: FieldParams) -> bool:
    """Complete case analysis for x^4 - 2a x^2 + b over Q.

    A biquadratic factors iff it has a factor x^2 - r (d is a square) or it is
    (x^2 + px + s)(x^2 - px + s) with s^2 = b and p^2 = 2a + 2s.
    """
    if is_rational_square(params.d):
        return True
    s = rational_sqrt(params.b)
    if s is None:
        return False
    two_a = Fraction(params.two_a)
    return is_rational_square(two_a + 2 * s) or is_rational_square(two_a - 2 * s)


def classify_biquadratic(params: FieldParams) -> Classification:
    """Classify the field defined by ``params``.

    Order of the tests: reducible, not totally real (d <= 0), cyclic (b*d a
    square), Klein (b a square), otherwise non-Galois. A reducible polynomial
    is reported as such whatever the sign of d. When b and b*d are both
    squares then d is a square too, so the reducible branch wins.
    """
    d = params.d
    if is_reducible(params):
        result = Classification(tag=FieldClass.REDUCIBLE)
    elif d <= 0:
        result = Classification(tag=FieldClass.NOT_TOTALLY_REAL)
    else:
        cyclic_c = rational_sqrt(params.b * d)
        klein_c = rational_sqrt(params.b)
        if cyclic_c is not None:
            result = Classification(tag=FieldClass.CYCLIC, c=cyclic_c)
        elif klein_c is not None:
            result = Classification(tag=FieldClass.KLEIN, c=klein_c)
        else:
            result = Classification(tag=FieldClass.NON_GALOIS)
    logger.debug(f"Classified {params}: {result}")
    return result
