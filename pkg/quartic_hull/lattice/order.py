"""Integral lattices of K given by explicit bases."""

import logging
import os
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from quartic_hull.exceptions import LatticeError, UnknownPresetError
from quartic_hull.field.core import FieldContext
from quartic_hull.field.element import FieldElement, Rational, format_rational, parse_rational
from quartic_hull.utils.linalg import (
    Matrix,
    common_denominator,
    det,
    hermite_normal_form,
    inverse,
    to_fraction_matrix,
    vec_mat,
)

logger = logging.getLogger(__name__)


class IntegralLattice:
    """A rank-4 lattice in K; rows of ``basis`` are generators in (k, l, m, n)."""

    def __init__(self, basis: Sequence[Sequence[Rational]], name: Optional[str] = None):
        """Initialize the lattice.

        Args:
            basis: four rational rows
            name: preset name, if any

        Raises:
            LatticeError: if the basis is not 4x4 or is singular
        """
        rows = to_fraction_matrix(basis)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise LatticeError("a lattice basis must have four rows of four entries")
        try:
            self._inverse = inverse(rows)
        except ZeroDivisionError as e:
            raise LatticeError(f"singular lattice basis {rows}") from e
        self.basis: Matrix = rows
        self.name = name

    @classmethod
    def standard(cls, name: Optional[str] = None) -> "IntegralLattice":
        return cls([[int(i == j) for j in range(4)] for i in range(4)], name)

    @classmethod
    def from_generators(cls, rows: Iterable[Sequence[Rational]], name: Optional[str] = None) -> "IntegralLattice":
        """The Z-module spanned by rational rows, reduced to a basis by integer HNF."""
        gens = to_fraction_matrix(list(rows))
        den = common_denominator([x for r in gens for x in r])
        hnf = hermite_normal_form([[int(x * den) for x in r] for r in gens])
        if len(hnf) != 4:
            raise LatticeError(f"generators span a module of rank {len(hnf)}, expected 4")
        return cls([[Fraction(x, den) for x in r] for r in hnf], name)

    @property
    def rows(self) -> List[FieldElement]:
        return [FieldElement.from_coords(r) for r in self.basis]

    @property
    def covolume(self) -> Fraction:
        """|det| of the basis; index of the lattice is 1/covolume over Z^4."""
        return abs(det(self.basis))

    def coordinates(self, v: FieldElement) -> List[Fraction]:
        """c with v = sum c_i * basis_i."""
        return vec_mat(list(v.coords), self._inverse)

    def contains(self, v: FieldElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(v))

    def element(self, coefficients: Sequence[int]) -> FieldElement:
        return FieldElement.from_coords(vec_mat([Fraction(c) for c in coefficients], self.basis))

    def verify_order(self, field: FieldContext) -> bool:
        """1 lies in the lattice and products of basis rows stay in it."""
        if not self.contains(FieldElement.one()):
            return False
        rows = self.rows
        for i, u in enumerate(rows):
            for v in rows[i:]:
                if not self.contains(field.mul(u, v)):
                    logger.debug(f"Lattice {self.name}: product {u}*{v} is not integral")
                    return False
        return True

    def to_text(self) -> str:
        return "".join(" ".join(format_rational(x) for x in row) + "\n" for row in self.basis)

    def __eq__(self, other: object) -> bool:
        """Equal as Z-modules."""
        if not isinstance(other, IntegralLattice):
            return NotImplemented
        return all(other.contains(r) for r in self.rows) and all(self.contains(r) for r in other.rows)

    def __repr__(self) -> str:
        return f"IntegralLattice(name={self.name!r}, basis={[[str(x) for x in r] for r in self.basis]})"


def load_lattice_file(path: str) -> IntegralLattice:
    """Read four rows of four rationals ``p/q``; blank lines and ``#`` comments are skipped.

    Raises:
        LatticeError: if the file is malformed
    """
    if not os.path.exists(path):
        raise LatticeError(f"lattice file {path} not found")
    rows = []
    with open(path, "r") as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([parse_rational(p) for p in line.split()])
            except (ValueError, ZeroDivisionError) as e:
                raise LatticeError(f"malformed lattice row {line!r} in {path}") from e
    logger.info(f"Loaded lattice from {path}")
    return IntegralLattice(rows, name=os.path.basename(path))


def dump_lattice_file(lattice: IntegralLattice, path: str) -> None:
    with open(path, "w") as f:
        f.write(lattice.to_text())
    logger.info(f"Saved lattice to {path}")


def _shintani_lattice(n: int) -> IntegralLattice:
    g1 = [Fraction(1, n), 0, Fraction(n - 2, n), 0]
    g2 = [0, Fraction(1, n), 0, Fraction(n - 2, n)]
    return IntegralLattice([g1, g2, [0, 0, 1, 0], [0, 0, 0, 1]], name=f"shintani{n}")


def _klein_lattice(n: int) -> IntegralLattice:
    """rk, rl, m, n integral where r * r = n."""
    r = {9: 3, 25: 5, 49: 7}[n]
    return IntegralLattice(
        [[Fraction(1, r), 0, 0, 0], [0, Fraction(1, r), 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        name=f"klein{n}",
    )


_FIXED: Dict[str, IntegralLattice] = {}

LATTICE_PRESETS = ("k1", "k2", "f15_45", "shintani<n>", "klein9", "klein25", "klein49", "k11")

_SHINTANI = re.compile(r"^shintani\(?(\d+)\)?$")


def preset_lattice(name: str) -> IntegralLattice:
    """Integral basis of a preset field.

    Raises:
        UnknownPresetError: for an unknown name
    """
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]
    if key in ("k1", "k2"):
        lattice = IntegralLattice.standard(key)
    elif key == "f15_45":
        lattice = IntegralLattice(
            [
                [Fraction(1, 6), 0, 0, Fraction(1, 2)],
                [0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 2)],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ],
            name=key,
        )
    elif key in ("klein9", "klein25", "klein49"):
        lattice = _klein_lattice(int(key[5:]))
    elif key == "k11":
        lattice = IntegralLattice.from_generators(
            [
                [Fraction(1, 275), 0, Fraction(3, 11), 0],
                [0, Fraction(1, 55), 0, Fraction(4, 11)],
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ],
            name=key,
        )
    else:
        match = _SHINTANI.match(key)
        if not match or int(match.group(1)) % 2 == 0:
            raise UnknownPresetError(f"unknown lattice preset {name!r}; known: {', '.join(LATTICE_PRESETS)}")
        lattice = _shintani_lattice(int(match.group(1)))
        key = lattice.name or key
    _FIXED[key] = lattice
    return lattice
