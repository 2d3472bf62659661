"""Exception hierarchy for Quartic-Hull."""

from typing import Any, Optional


class QuarticHullError(Exception):
    """Base class for all errors raised by the package."""


class NotGaloisError(QuarticHullError):
    """The field is not a totally real Galois field of degree 4."""


class DivisionByZeroError(QuarticHullError, ZeroDivisionError):
    """Inverse of an element of norm zero was requested."""


class UnknownPresetError(QuarticHullError, KeyError):
    """A preset (field, lattice or pipeline) name is not known."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown preset"


class LatticeError(QuarticHullError):
    """A lattice basis is singular or a lattice file is malformed."""


class UnboundedSlabError(QuarticHullError):
    """The slab {phi <= c} meets the positive cone in an unbounded set."""


class InsufficientRankError(QuarticHullError):
    """The found units span a log-lattice of rank smaller than 3."""

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


class DegenerateHullError(QuarticHullError):
    """A point set expected to span a 3-polytope spans less."""

    def __init__(self, message: str, dimension: int):
        super().__init__(message)
        self.dimension = dimension


class InvalidSupportError(QuarticHullError):
    """A functional failed the support-hyperplane certificate."""

    def __init__(self, message: str, certificate: Optional[Any] = None):
        super().__init__(message)
        self.certificate = certificate


class PivotError(QuarticHullError):
    """Pivoting across a ridge failed."""


class CellCapReachedError(QuarticHullError):
    """The fundamental-domain search exceeded its cell cap."""

    def __init__(self, message: str, cells: int):
        super().__init__(message)
        self.cells = cells


class DomainError(QuarticHullError):
    """The cell complex reached an inconsistent state."""


class UnitBasisError(QuarticHullError):
    """A found unit could not be expressed over the computed unit basis."""

    def __init__(self, message: str, unit: Optional[Any] = None):
        super().__init__(message)
        self.unit = unit
