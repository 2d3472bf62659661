"""Field elements kx^3 + lx^2 + mx + n with exact rational coordinates."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Tuple, Union

Rational = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a finite decimal string exactly."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


@total_ordering
class FieldElement:
    """An element of K in the power basis (x^3, x^2, x, 1).

    Instances are immutable and hashable. Ring multiplication depends on the
    defining polynomial and therefore lives in :mod:`quartic_hull.field.arithmetic`;
    the element itself only knows the vector-space structure.
    """

    __slots__ = ("_coords",)

    def __init__(self, k: Rational = 0, l: Rational = 0, m: Rational = 0, n: Rational = 0) -> None:
        self._coords: Tuple[Fraction, Fraction, Fraction, Fraction] = (
            Fraction(k),
            Fraction(l),
            Fraction(m),
            Fraction(n),
        )

    @classmethod
    def from_coords(cls, coords: Iterable[Rational]) -> FieldElement:
        values = tuple(coords)
        if len(values) != 4:
            raise ValueError(f"a field element needs 4 coordinates, got {len(values)}")
        return cls(*values)

    @classmethod
    def parse(cls, text: str) -> FieldElement:
        """Parse ``"k,l,m,n"`` (commas or whitespace, rationals as ``p/q``)."""
        parts = text.replace(",", " ").replace("(", " ").replace(")", " ").split()
        return cls.from_coords(parse_rational(p) for p in parts)

    @classmethod
    def one(cls) -> FieldElement:
        return cls(0, 0, 0, 1)

    @classmethod
    def zero(cls) -> FieldElement:
        return cls(0, 0, 0, 0)

    @classmethod
    def generator(cls) -> FieldElement:
        """The class of x."""
        return cls(0, 0, 1, 0)

    @property
    def coords(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._coords

    @property
    def k(self) -> Fraction:
        return self._coords[0]

    @property
    def l(self) -> Fraction:  # noqa: E743
        return self._coords[1]

    @property
    def m(self) -> Fraction:
        return self._coords[2]

    @property
    def n(self) -> Fraction:
        return self._coords[3]

    def is_zero(self) -> bool:
        return not any(self._coords)

    def is_rational(self) -> bool:
        return not any(self._coords[:3])

    def scale(self, factor: Rational) -> FieldElement:
        f = Fraction(factor)
        return FieldElement(*(c * f for c in self._coords))

    def to_strings(self) -> list:
        return [format_rational(c) for c in self._coords]

    def __add__(self, other: FieldElement) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return FieldElement(*(a + b for a, b in zip(self._coords, other._coords)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return FieldElement(*(a - b for a, b in zip(self._coords, other._coords)))

    def __neg__(self) -> FieldElement:
        return FieldElement(*(-c for c in self._coords))

    def __mul__(self, other: Rational) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Rational) -> FieldElement:
        return self.__mul__(other)

    def __truediv__(self, other: Rational) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self._coords == other._coords
        return NotImplemented

    def __lt__(self, other: FieldElement) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self._coords < other._coords

    def __hash__(self) -> int:
        return hash(self._coords)

    def __iter__(self):
        return iter(self._coords)

    def __repr__(self) -> str:
        return f"FieldElement({', '.join(self.to_strings())})"

    def __str__(self) -> str:
        return f"({', '.join(self.to_strings())})"


def elements(rows: Sequence[Sequence[Rational]]) -> list:
    """Build a list of elements from coordinate rows."""
    return [FieldElement.from_coords(r) for r in rows]
