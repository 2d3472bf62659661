"""The field context: one object per defining polynomial."""

import logging
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import mpmath

from quartic_hull.exceptions import NotGaloisError
from quartic_hull.field import arithmetic, galois, roots
from quartic_hull.field.classification import classify_biquadratic
from quartic_hull.field.element import FieldElement, Rational
from quartic_hull.field.models import Automorphism, Classification, FieldParams, RootSystem, SignVector
from quartic_hull.utils.config import config
from quartic_hull.utils.linalg import Matrix

logger = logging.getLogger(__name__)


class FieldContext:
    """K = Q[x]/(x^4 - 2a x^2 + b) with its classification, roots and automorphisms.

    Everything derived from the parameters is computed lazily and cached; the
    context itself is immutable and can be shared.
    """

    def __init__(self, params: FieldParams, precision_bits: Optional[int] = None):
        """Initialize the field context.

        Args:
            params: the coefficients 2a and b
            precision_bits: bits for root intervals and mpmath logs
                (defaults to the ``precision`` configuration key)
        """
        self.params = params
        self.precision_bits = precision_bits or config.get_int("precision")

    @classmethod
    def from_string(cls, text: str, precision_bits: Optional[int] = None) -> "FieldContext":
        """Parse ``"2a,b"``, e.g. ``"4,1"`` for x^4 - 4x^2 + 1."""
        parts = text.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"field must be given as '2a,b', got {text!r}")
        return cls(FieldParams(two_a=int(parts[0]), b=int(parts[1])), precision_bits)

    @property
    def dps(self) -> int:
        """Decimal digits matching ``precision_bits``."""
        return max(15, int(self.precision_bits * 0.30103) + 5)

    @cached_property
    def classification(self) -> Classification:
        return classify_biquadratic(self.params)

    @property
    def is_galois(self) -> bool:
        return self.classification.is_galois

    def require_galois(self) -> None:
        if not self.is_galois:
            raise NotGaloisError(f"{self.params} is {self.classification.tag.value}, not a Galois field")

    @cached_property
    def roots(self) -> RootSystem:
        return roots.isolate_roots(self.params, Fraction(1, 2**self.precision_bits))

    @cached_property
    def automorphisms(self) -> List[Automorphism]:
        """Generators of the Galois group."""
        return galois.generator_automorphisms(self.params, self.classification)

    @cached_property
    def galois_group(self) -> List[Automorphism]:
        return galois.galois_group(self.automorphisms, self.params)

    @cached_property
    def trace_form(self) -> Matrix:
        return arithmetic.trace_form(self.params)

    @cached_property
    def _trace_form_inverse(self) -> Matrix:
        return galois.trace_form_inverse(self.trace_form)

    # ring operations

    def mul(self, u: FieldElement, v: FieldElement) -> FieldElement:
        return arithmetic.mul(u, v, self.params)

    def inv(self, v: FieldElement) -> FieldElement:
        return arithmetic.inv(v, self.params)

    def power(self, v: FieldElement, exponent: int) -> FieldElement:
        return arithmetic.power(v, exponent, self.params)

    def product(self, items: Sequence[FieldElement]) -> FieldElement:
        return arithmetic.product(items, self.params)

    def norm(self, v: FieldElement) -> Fraction:
        return arithmetic.norm(v, self.params)

    def trace(self, v: FieldElement) -> Fraction:
        return arithmetic.trace(v, self.params)

    def norm_trace(self, v: FieldElement) -> Tuple[Fraction, Fraction]:
        return arithmetic.norm_trace(v, self.params)

    def mult_matrix(self, v: FieldElement) -> Matrix:
        return arithmetic.mult_matrix(v, self.params)

    def evaluate_polynomial(self, coefficients: Sequence[Rational], y: FieldElement) -> FieldElement:
        return arithmetic.evaluate_polynomial(coefficients, y, self.params)

    # signs and embeddings

    def sign_vector(self, v: FieldElement) -> SignVector:
        return SignVector(signs=arithmetic.conjugate_signs(v, self.params))

    def is_strictly_positive(self, v: FieldElement) -> bool:
        return arithmetic.is_strictly_positive(v, self.params)

    def numeric_conjugates(self, v: FieldElement, dps: Optional[int] = None) -> List[mpmath.mpf]:
        return roots.numeric_conjugates(v, self.params, dps or self.dps)

    def float_conjugates(self, v: FieldElement) -> List[float]:
        return [float(x) for x in roots.numeric_conjugates(v, self.params, 30)]

    def interval_conjugates(self, v: FieldElement) -> List[mpmath.iv.mpf]:
        """Certified enclosures of the four conjugates."""
        return roots.interval_conjugates(v, self.roots)

    # Galois structure

    def apply(self, sigma: Automorphism, v: FieldElement) -> FieldElement:
        return galois.apply_automorphism(sigma, v)

    def root_permutation(self, sigma: Automorphism) -> Tuple[int, int, int, int]:
        return galois.root_permutation(sigma, self.params)

    def dual_element(self, phi: Sequence[Rational]) -> FieldElement:
        """lambda in K with phi(v) = Tr(lambda v).

        Raises:
            NotGaloisError: if the field is not Galois
        """
        self.require_galois()
        return self.trace_dual(phi)

    def trace_dual(self, phi: Sequence[Rational]) -> FieldElement:
        """lambda with phi(v) = Tr(lambda v), for Galois and non-Galois fields alike."""
        return galois.dual_element(phi, self._trace_form_inverse)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldContext) and self.params == other.params

    def __hash__(self) -> int:
        return hash(self.params)

    def __repr__(self) -> str:
        return f"FieldContext({self.params})"
