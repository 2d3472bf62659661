"""Data models for biquadratic fields."""

from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from quartic_hull.field.element import FieldElement


class FieldParams(BaseModel):
    """Parameters of q = x^4 - 2a x^2 + b, given by the integers 2a and b."""

    model_config = ConfigDict(frozen=True)

    two_a: int = Field(ge=1)
    b: int = Field(ge=1)

    @property
    def a(self) -> Fraction:
        return Fraction(self.two_a, 2)

    @property
    def d(self) -> Fraction:
        return self.a * self.a - self.b

    @property
    def polynomial(self) -> Tuple[int, int, int, int, int]:
        """Coefficients of q, highest degree first."""
        return (1, 0, -self.two_a, 0, self.b)

    def __str__(self) -> str:
        return f"x^4 - {self.two_a}x^2 + {self.b}"


class FieldClass(str, Enum):
    """Outcome of the biquadratic classification."""

    REDUCIBLE = "reducible"
    NOT_TOTALLY_REAL = "not_totally_real"
    NON_GALOIS = "non_galois"
    CYCLIC = "cyclic"
    KLEIN = "klein"


class Classification(BaseModel):
    """Tagged classification result; ``c`` is set (and positive) for Galois fields."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tag: FieldClass
    c: Optional[Fraction] = None

    @property
    def is_galois(self) -> bool:
        return self.tag in (FieldClass.CYCLIC, FieldClass.KLEIN)

    @property
    def galois_group(self) -> Optional[str]:
        if self.tag == FieldClass.CYCLIC:
            return "Z4"
        if self.tag == FieldClass.KLEIN:
            return "Z2+Z2"
        return None

    def __str__(self) -> str:
        if self.c is None:
            return self.tag.value
        return f"{self.tag.value}(c={self.c})"


class RootSystem(BaseModel):
    """Disjoint rational intervals around x1 > x2 > x3 > x4.

    x1 = sqrt(a + sqrt(d)), x2 = sqrt(a - sqrt(d)), x3 = -x2, x4 = -x1.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    intervals: Tuple[
        Tuple[Fraction, Fraction],
        Tuple[Fraction, Fraction],
        Tuple[Fraction, Fraction],
        Tuple[Fraction, Fraction],
    ]
    precision: Fraction

    def width(self) -> Fraction:
        return max(hi - lo for lo, hi in self.intervals)

    def index_of(self, lo: Fraction, hi: Fraction) -> Optional[int]:
        """Index of the unique root interval containing [lo, hi], if any."""
        hits = [i for i, (a, b) in enumerate(self.intervals) if a <= lo and hi <= b]
        return hits[0] if len(hits) == 1 else None


class Automorphism(BaseModel):
    """A Galois automorphism as a 4x4 rational matrix on (k, l, m, n) columns."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: Tuple[Tuple[Fraction, ...], ...]
    order: int = Field(ge=1, le=4)
    image_of_x: FieldElement

    @field_validator("matrix")
    @classmethod
    def validate_shape(cls, v):
        """Matrix must be 4x4."""
        if len(v) != 4 or any(len(row) != 4 for row in v):
            raise ValueError("automorphism matrix must be 4x4")
        return v

    def __str__(self) -> str:
        k, l, m, n = self.image_of_x.coords
        text = ""
        for coeff, mono in ((k, "x^3"), (l, "x^2"), (m, "x"), (n, "")):
            if not coeff:
                continue
            mag = abs(coeff)
            body = mono if mag == 1 and mono else f"{mag}{mono}"
            if text:
                text += (" - " if coeff < 0 else " + ") + body
            else:
                text = ("-" if coeff < 0 else "") + body
        return "x -> " + (text or "0")


class SignVector(BaseModel):
    """Exact signs (+1, 0, -1) of the four conjugates, indexed by root order."""

    model_config = ConfigDict(frozen=True)

    signs: Tuple[int, int, int, int]

    @field_validator("signs")
    @classmethod
    def validate_signs(cls, v):
        """Entries must be -1, 0 or 1."""
        if any(s not in (-1, 0, 1) for s in v):
            raise ValueError("sign entries must be -1, 0 or 1")
        return v

    @property
    def is_strictly_positive(self) -> bool:
        return all(s == 1 for s in self.signs)

    def __mul__(self, other: "SignVector") -> "SignVector":
        return SignVector(signs=tuple(a * b for a, b in zip(self.signs, other.signs)))

    def __str__(self) -> str:
        return "(" + ",".join({1: "+", 0: "0", -1: "-"}[s] for s in self.signs) + ")"
