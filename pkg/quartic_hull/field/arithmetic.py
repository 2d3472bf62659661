"""Exact arithmetic in K = Q[x]/(x^4 - 2a x^2 + b).

Besides the ring operations this module carries the quadratic tower
Q < Q(sqrt d) < K: every conjugate of v = kx^3 + lx^2 + mx + n has the form
v(x_i) = x_i * P + Q with x_i^2 = a +- sqrt(d) and P, Q in Q(sqrt d). Norms and
signs of conjugates are decided exactly in Q(sqrt d).
"""

import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from quartic_hull.exceptions import DivisionByZeroError
from quartic_hull.field.element import FieldElement, Rational
from quartic_hull.field.models import FieldParams
from quartic_hull.utils.linalg import Matrix, det, solve

logger = logging.getLogger(__name__)

# (s, t): x_i = s * sqrt(a + t * sqrt(d)); order x1 > x2 > x3 > x4
ROOT_SIGNS: Tuple[Tuple[int, int], ...] = ((1, 1), (1, -1), (-1, -1), (-1, 1))

Surd = Tuple[Fraction, Fraction]


def surd_mul(u: Surd, v: Surd, d: Fraction) -> Surd:
    return (u[0] * v[0] + u[1] * v[1] * d, u[0] * v[1] + u[1] * v[0])


def surd_sign(u: Surd, d: Fraction) -> int:
    """Exact sign of u[0] + u[1] * sqrt(d), d >= 0."""
    alpha, beta = u
    sa = (alpha > 0) - (alpha < 0)
    sb = (beta > 0) - (beta < 0) if d else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    lhs, rhs = alpha * alpha, beta * beta * d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def _tower_parts(v: FieldElement, params: FieldParams, t: int) -> Tuple[Surd, Surd, Surd]:
    """(y, P, Q) in Q(sqrt d) for y = a + t sqrt(d)."""
    a = params.a
    k, l, m, n = v.coords
    y = (a, Fraction(t))
    p = (k * a + m, t * k)
    q = (l * a + n, t * l)
    return y, p, q


def conjugate_sign(v: FieldElement, params: FieldParams, index: int) -> int:
    """Exact sign of the conjugate of v at root ``index`` (0-based, x1 first)."""
    s, t = ROOT_SIGNS[index]
    d = params.d
    y, p, q = _tower_parts(v, params, t)
    sp = s * surd_sign(p, d)
    sq = surd_sign(q, d)
    if sp == 0:
        return sq
    if sq == 0 or sp == sq:
        return sp
    yp2 = surd_mul(y, surd_mul(p, p, d), d)
    q2 = surd_mul(q, q, d)
    diff = surd_sign((yp2[0] - q2[0], yp2[1] - q2[1]), d)
    if diff > 0:
        return sp
    if diff < 0:
        return sq
    return 0


def conjugate_signs(v: FieldElement, params: FieldParams) -> Tuple[int, int, int, int]:
    return tuple(conjugate_sign(v, params, i) for i in range(4))  # type: ignore[return-value]


def is_strictly_positive(v: FieldElement, params: FieldParams) -> bool:
    """All four conjugates are positive."""
    return all(conjugate_sign(v, params, i) > 0 for i in range(4))


def mul(u: FieldElement, v: FieldElement, params: FieldParams) -> FieldElement:
    """Product in K, reducing with x^4 = 2a x^2 - b."""
    uc = u.coords[::-1]
    vc = v.coords[::-1]
    prod = [Fraction(0)] * 7
    for i, x in enumerate(uc):
        if x:
            for j, y in enumerate(vc):
                if y:
                    prod[i + j] += x * y
    two_a = Fraction(params.two_a)
    for deg in range(6, 3, -1):
        c = prod[deg]
        if c:
            prod[deg] = Fraction(0)
            prod[deg - 2] += two_a * c
            prod[deg - 4] -= params.b * c
    return FieldElement(prod[3], prod[2], prod[1], prod[0])


def mult_matrix(v: FieldElement, params: FieldParams) -> Matrix:
    """Matrix of w -> v*w on (k, l, m, n) column vectors."""
    basis = [FieldElement(1, 0, 0, 0), FieldElement(0, 1, 0, 0), FieldElement(0, 0, 1, 0), FieldElement.one()]
    columns = [mul(v, e, params).coords for e in basis]
    return [[columns[j][i] for j in range(4)] for i in range(4)]


def norm(v: FieldElement, params: FieldParams) -> Fraction:
    """Product of the four conjugates, computed in Q(sqrt d)."""
    d = params.d
    y, p, q = _tower_parts(v, params, 1)
    yp2 = surd_mul(y, surd_mul(p, p, d), d)
    q2 = surd_mul(q, q, d)
    alpha, beta = q2[0] - yp2[0], q2[1] - yp2[1]
    return alpha * alpha - beta * beta * d


def trace(v: FieldElement, params: FieldParams) -> Fraction:
    """Sum of the four conjugates: 4(l a + n)."""
    return 4 * (v.l * params.a + v.n)


def norm_trace(v: FieldElement, params: FieldParams) -> Tuple[Fraction, Fraction]:
    return norm(v, params), trace(v, params)


def norm_by_determinant(v: FieldElement, params: FieldParams) -> Fraction:
    """Norm as det of the multiplication matrix (slow path, used as a check)."""
    return det(mult_matrix(v, params))


def inv(v: FieldElement, params: FieldParams) -> FieldElement:
    """Multiplicative inverse.

    Raises:
        DivisionByZeroError: if norm(v) == 0
    """
    if norm(v, params) == 0:
        raise DivisionByZeroError(f"element {v} has norm 0 and is not invertible")
    w = solve(mult_matrix(v, params), [Fraction(0), Fraction(0), Fraction(0), Fraction(1)])
    return FieldElement.from_coords(w)


def power(v: FieldElement, exponent: int, params: FieldParams) -> FieldElement:
    if exponent < 0:
        return power(inv(v, params), -exponent, params)
    result = FieldElement.one()
    base = v
    e = exponent
    while e:
        if e & 1:
            result = mul(result, base, params)
        e >>= 1
        if e:
            base = mul(base, base, params)
    return result


def product(items: Sequence[FieldElement], params: FieldParams) -> FieldElement:
    result = FieldElement.one()
    for item in items:
        result = mul(result, item, params)
    return result


def evaluate_polynomial(coefficients: Sequence[Rational], y: FieldElement, params: FieldParams) -> FieldElement:
    """Evaluate a rational polynomial (highest degree first) at y by Horner's rule."""
    result = FieldElement.zero()
    for c in coefficients:
        result = mul(result, y, params) + FieldElement(0, 0, 0, c)
    return result


def trace_form(params: FieldParams) -> List[List[Fraction]]:
    """Gram matrix Tr(e_j e_k) of the power basis (x^3, x^2, x, 1)."""
    a, b = params.a, params.b
    s = [Fraction(0)] * 7
    s[0] = Fraction(4)
    s[2] = 4 * a
    s[4] = 2 * a * s[2] - 4 * b
    s[6] = 2 * a * s[4] - b * s[2]
    degrees = (3, 2, 1, 0)
    return [[s[dj + dk] for dk in degrees] for dj in degrees]
