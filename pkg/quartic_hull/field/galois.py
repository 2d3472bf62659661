"""Galois automorphisms and the trace-form dual element."""

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from quartic_hull.exceptions import NotGaloisError
from quartic_hull.field.arithmetic import conjugate_sign, mul, power
from quartic_hull.field.element import FieldElement, Rational
from quartic_hull.field.models import Automorphism, Classification, FieldClass, FieldParams
from quartic_hull.utils.linalg import Matrix, identity, inverse, mat_mul, mat_vec

logger = logging.getLogger(__name__)

# root index from (magnitude, sign): magnitude 0 is |x1|, 1 is |x2|
_ROOT_INDEX = {(0, 1): 0, (1, 1): 1, (1, -1): 2, (0, -1): 3}


def automorphism_matrix(image_of_x: FieldElement, params: FieldParams) -> Matrix:
    """Columns are the images of x^3, x^2, x, 1."""
    images = [power(image_of_x, e, params) for e in (3, 2, 1, 0)]
    return [[images[col].coords[row] for col in range(4)] for row in range(4)]


def matrix_order(matrix: Matrix, limit: int = 4) -> int:
    ident = identity(4)
    current = matrix
    for order in range(1, limit + 1):
        if current == ident:
            return order
        current = mat_mul(current, matrix)
    raise NotGaloisError(f"substitution matrix has no order <= {limit}")


def make_automorphism(image_of_x: FieldElement, params: FieldParams) -> Automorphism:
    matrix = automorphism_matrix(image_of_x, params)
    return Automorphism(
        matrix=tuple(tuple(row) for row in matrix),
        order=matrix_order(matrix),
        image_of_x=image_of_x,
    )


def root_permutation(sigma: Automorphism, params: FieldParams) -> Tuple[int, int, int, int]:
    """Indices pi with sigma(x)(x_i) = x_pi(i), decided exactly.

    The value w(x_i) of w = sigma(x) is a root, so it is fixed by its sign and
    by whether w^2 - x^2 vanishes at x_i.
    """
    w = sigma.image_of_x
    x = FieldElement.generator()
    gap = mul(w, w, params) - mul(x, x, params)
    perm = []
    for i in range(4):
        sign = conjugate_sign(w, params, i)
        own = 0 if i in (0, 3) else 1
        magnitude = own if conjugate_sign(gap, params, i) == 0 else 1 - own
        perm.append(_ROOT_INDEX[(magnitude, sign)])
    return tuple(perm)  # type: ignore[return-value]


def generator_automorphisms(params: FieldParams, classification: Classification) -> List[Automorphism]:
    """Generators of Gal(K/Q).

    Cyclic: one generator x -> kx^3 + lx with k = -a/c, l = (a^2 + d)/c, the
    sign of c chosen so that x1 goes to x2. Klein: x -> kx^3 + lx with k = -1/c,
    l = 2a/c, the sign of c chosen so that x1 goes to x3 = -x2, and x -> -x.

    Raises:
        NotGaloisError: for non-Galois, reducible or not totally real fields
    """
    if not classification.is_galois or classification.c is None:
        raise NotGaloisError(f"{params} is {classification.tag.value}; no Galois automorphisms")
    a, d, c = params.a, params.d, classification.c
    if classification.tag == FieldClass.CYCLIC:
        target = 1
        candidates = [FieldElement(-a / cc, 0, (a * a + d) / cc, 0) for cc in (c, -c)]
    else:
        target = 2
        candidates = [FieldElement(-1 / cc, 0, 2 * a / cc, 0) for cc in (c, -c)]

    chosen = None
    for w in candidates:
        sigma = make_automorphism(w, params)
        if root_permutation(sigma, params)[0] == target:
            chosen = sigma
            break
    if chosen is None:
        raise NotGaloisError(f"no automorphism candidate permutes the roots of {params}")

    generators = [chosen]
    if classification.tag == FieldClass.KLEIN:
        generators.append(make_automorphism(FieldElement(0, 0, -1, 0), params))
    for g in generators:
        logger.debug(f"Generator of Gal({params}): {g} of order {g.order}")
    return generators


def galois_group(generators: Sequence[Automorphism], params: FieldParams) -> List[Automorphism]:
    """All four automorphisms, identity first, closed under composition."""
    elements = [make_automorphism(FieldElement.generator(), params)]
    frontier = list(elements)
    while frontier:
        nxt = []
        for h in frontier:
            for g in generators:
                image = apply_automorphism(g, h.image_of_x)
                if all(image != e.image_of_x for e in elements):
                    composed = make_automorphism(image, params)
                    elements.append(composed)
                    nxt.append(composed)
        frontier = nxt
    return elements


def apply_automorphism(sigma: Automorphism, v: FieldElement) -> FieldElement:
    return FieldElement.from_coords(mat_vec(sigma.matrix, v.coords))


def dual_element(phi: Sequence[Rational], trace_form_inverse: Matrix) -> FieldElement:
    """The element lambda with phi(v) = Tr(lambda * v) for all v.

    Since Tr(lambda v) = sum_i lambda(x_i) v(x_i), phi is nonnegative on the
    closed positive cone iff lambda is totally nonnegative.
    """
    return FieldElement.from_coords(mat_vec(trace_form_inverse, [Fraction(p) for p in phi]))


def trace_form_inverse(trace_form: Matrix) -> Matrix:
    return inverse(trace_form)
