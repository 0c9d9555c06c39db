"""
The degree-2 sum on E: y^2 = (x + 2)(x^2 - 2) = x^3 + 2x^2 - 2x - 4.

The 2-isogeny with kernel K = (-2, 0) lands on a curve E''; composing it
with an F_p-isomorphism E'' -> E gives an isogeny E -> E whose image has
index 2. The quadratic character is +1 on the image and -1 off it.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from arith import Prime
from arith.curve import INFINITY, CurveParams, CurvePoint
from arith.errors import InvalidPrimeError, NoRationalIsomorphismError

from . import require_divisible

logger = logging.getLogger(__name__)

CURVE_COEFFICIENTS = (2, -2, -4)
KERNEL_X = -2

# Primes where the quotient must equal h*; elsewhere the comparison is reported only
ASSERTED_PRIMES = frozenset({131})


@dataclass(frozen=True)
class TwoIsogenyCase:
    """A built 2-isogeny E -> E together with its image"""

    prime: Prime
    domain: CurveParams
    kernel: CurvePoint
    velu_codomain: CurveParams
    u: int
    r: int
    image: FrozenSet[CurvePoint]

    @property
    def p(self) -> int:
        return self.prime.p

    def __repr__(self) -> str:
        return f"TwoIsogenyCase(p={self.p}, u={self.u}, r={self.r}, |image|={len(self.image)})"


def _translated(prime: Prime) -> Tuple[int, int]:
    """(a, b) with E written as y^2 = X(X^2 + aX + b), X = x + 2"""
    p = prime.p
    A, B, C = CURVE_COEFFICIENTS
    x0 = KERNEL_X
    return (3 * x0 + A) % p, (3 * x0 * x0 + 2 * A * x0 + B) % p


def velu_map(prime: Prime, pt: CurvePoint) -> CurvePoint:
    """phi(X, y) = (y^2/X^2, y(b - X^2)/X^2) onto Y^2 = X^3 - 2aX^2 + (a^2 - 4b)X"""
    p = prime.p
    if pt.is_infinity:
        return INFINITY
    X = (pt.x - KERNEL_X) % p
    if X == 0:
        return INFINITY
    _, b = _translated(prime)
    inv_X2 = pow(X * X, -1, p)
    return CurvePoint(pt.y * pt.y * inv_X2 % p, pt.y * (b - X * X) * inv_X2 % p)


def find_isomorphism(source: CurveParams, target: CurveParams) -> Optional[Tuple[int, int]]:
    """
    (u, r) with x_source = u^2 x_target + r, y_source = u^3 y_target carrying
    target's equation onto source's, or None. u runs over F_p^*, r is then
    forced by the x^2 coefficient.
    """
    p = source.p
    a2, a4, a6 = source.a.value, source.b.value, source.c.value
    b2, b4, b6 = target.a.value, target.b.value, target.c.value
    inv3 = pow(3, -1, p)
    for u in range(1, p):
        u2 = u * u % p
        r = (b2 * u2 - a2) * inv3 % p
        if (3 * r * r + 2 * a2 * r + a4 - b4 * u2 * u2) % p:
            continue
        if (r * r * r + a2 * r * r + a4 * r + a6 - b6 * u2 * u2 * u2) % p:
            continue
        return u, r
    return None


def build_two_isogeny(prime: Prime) -> TwoIsogenyCase:
    if prime.p <= 3:
        raise InvalidPrimeError(f"p = {prime.p} must exceed 3")
    p = prime.p
    domain = CurveParams.from_ints(prime, *CURVE_COEFFICIENTS)
    kernel = domain.point(KERNEL_X, 0)

    a, b = _translated(prime)
    velu = CurveParams.from_ints(prime, -2 * a, a * a - 4 * b, 0)

    found = find_isomorphism(domain, velu)
    if found is None:
        raise NoRationalIsomorphismError(f"{velu} is not isomorphic to {domain} over F_{p}")
    u, r = found
    u2, u3 = u * u % p, u * u * u % p

    image = {INFINITY}
    for pt in domain.enumerate_affine():
        q = velu_map(prime, pt)
        if not q.is_infinity:
            q = CurvePoint((u2 * q.x + r) % p, u3 * q.y % p)
        image.add(q)

    logger.debug("2-isogeny at p=%d: u=%d r=%d image size %d", p, u, r, len(image))
    return TwoIsogenyCase(prime, domain, kernel, velu, u, r, frozenset(image))


def chi_two(case: TwoIsogenyCase, pt: CurvePoint) -> int:
    return 1 if pt in case.image else -1


def two_isogeny_sum(case: TwoIsogenyCase) -> int:
    """Sum of x(P) * chi(P) over the affine points of E; divisible by p"""
    total = sum(pt.x * chi_two(case, pt) for pt in case.domain.enumerate_affine())
    require_divisible(total, case.p, "two-isogeny sum")
    return total


def is_ordinary(prime: Prime) -> bool:
    """Whether the trace of Frobenius of E is nonzero mod p"""
    return CurveParams.from_ints(prime, *CURVE_COEFFICIENTS).trace() % prime.p != 0
