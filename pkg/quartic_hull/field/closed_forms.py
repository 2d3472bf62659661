"""Closed-form data for the family p_n = x^4 - (n^2 + 4) x^2 + n^2 + 4, n odd."""

from fractions import Fraction
from typing import Dict

from quartic_hull.field.element import FieldElement
from quartic_hull.field.models import FieldParams


def shintani_params(n: int) -> FieldParams:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"the family is defined for odd positive n, got {n}")
    return FieldParams(two_a=n * n + 4, b=n * n + 4)


def shintani_generator_image(n: int) -> FieldElement:
    """sigma(x) = x^3/n - (n^2 + 2)/n * x for the cyclic generator."""
    return FieldElement(Fraction(1, n), 0, -Fraction(n * n + 2, n), 0)


def shintani_vertices(t: int) -> Dict[str, FieldElement]:
    """Decahedron vertices on 2k + 2l + m + n = 1 for n = 2t + 1."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    n = Fraction(2 * t + 1)
    t2, t3 = t * t, t * t * t
    return {
        "A": FieldElement.one(),
        "B": FieldElement(
            2 * (t + 1),
            -2 * (t + 1),
            -(8 * t3 + 16 * t2 + 16 * t + 7),
            8 * t3 + 16 * t2 + 18 * t + 8,
        )
        / n,
        "C": FieldElement(2, -2, -(8 * t2 + 8 * t + 8), 8 * t2 + 8 * t + 9),
        "D": FieldElement(2 * t, -2 * t, -(8 * t3 + 8 * t2 + 8 * t + 1), 8 * t3 + 8 * t2 + 10 * t + 2) / n,
        "A1": FieldElement(0, 1, 0, -1),
        "B1": FieldElement(1, 2 * t, -(2 * t + 3), 2) / n,
        "C1": FieldElement(0, 1, -2, 1),
        "D1": FieldElement(-1, 2 * t + 2, -(2 * t - 1), -2) / n,
    }
