"""
The 3-isogeny tau_d: E_d -> E_{d'} (d' = -27d) on y^2 = x^3 + d, its Tate
pairing functions, and the fiber character sum S_{tau_d}.

chi_tate evaluates the character through the closed-form pairing; chi_coset
evaluates it from the definition, via a stored point Q outside the image.
"""

import logging
from enum import Enum
from functools import cached_property
from typing import Callable, FrozenSet, List, Optional, Tuple

from arith import (
    CubicCharValue,
    FieldElement,
    Prime,
    cubic_exponent_value,
    legendre_value,
    residue_tables,
    sqrt_value,
)
from arith.curve import INFINITY, CurveParams, CurvePoint
from arith.errors import (
    CharacterMismatchError,
    KernelPointError,
    NotASquareError,
    NotOnCurveError,
)
from config.settings import Config

from . import CyclotomicSum, require_divisible

logger = logging.getLogger(__name__)


class Orientation(str, Enum):
    """How chi_coset relates to chi_tate on one fiber"""

    SAME = "same"
    CONJUGATE = "conjugate"


def _tau(p: int, d: int, pt: CurvePoint) -> CurvePoint:
    if pt.is_infinity or pt.x == 0:
        return INFINITY
    x, y = pt.x, pt.y
    inv_x = pow(x, -1, p)
    inv_x2 = inv_x * inv_x % p
    inv_x3 = inv_x2 * inv_x % p
    return CurvePoint(
        (y * y + 3 * d) * inv_x2 % p,
        y * (x * x * x - 8 * d) * inv_x3 % p,
    )


def isogeny_image(prime: Prime, d: int) -> FrozenSet[CurvePoint]:
    """tau_d(E_d(F_p)) together with infinity, for any nonzero d"""
    domain = CurveParams.mordell(prime, d)
    image = {_tau(prime.p, d % prime.p, pt) for pt in domain.enumerate_affine()}
    image.add(INFINITY)
    return frozenset(image)


class FiberIsogeny:
    """
    tau_d on one fiber, with alpha = sqrt(-3d) and T = (0, 3 alpha) on E_{d'}.

    The image set and the coset representative Q are computed on first use
    and then kept; nothing else on the object changes after construction.
    """

    def __init__(self, prime: Prime, d: int, alpha: Optional[int] = None):
        prime.require_cubic()
        p = prime.p
        d %= p
        if d == 0 or legendre_value(d, p) != 1:
            raise NotASquareError(f"d = {d} is not a nonzero square mod {p}")

        if alpha is None:
            alpha = sqrt_value(-3 * d, p)
        elif (alpha * alpha + 3 * d) % p:
            raise ValueError(f"alpha = {alpha} is not a square root of -3d mod {p}")

        self.prime = prime
        self.d = FieldElement(d, prime)
        self.d_prime = prime.element(-27 * d)
        self.alpha = prime.element(alpha)
        self.domain = CurveParams.mordell(prime, d)
        self.codomain = CurveParams.mordell_target(prime, d)
        self.T = CurvePoint(0, 3 * self.alpha.value % p)

    @property
    def p(self) -> int:
        return self.prime.p

    @cached_property
    def codomain_points(self) -> List[CurvePoint]:
        return self.codomain.enumerate_affine()

    @cached_property
    def image_set(self) -> FrozenSet[CurvePoint]:
        return isogeny_image(self.prime, self.d.value)

    @cached_property
    def coset_representatives(self) -> List[CurvePoint]:
        """Affine points of E_{d'} outside the image, in enumeration order"""
        return [pt for pt in self.codomain_points if pt not in self.image_set]

    @cached_property
    def Q(self) -> CurvePoint:
        return self.coset_representatives[0]

    def minus_four_d_exponent(self, omega: Optional[int] = None) -> int:
        """Exponent of (-4d/p)_3, the value of chi_tate at T"""
        return cubic_exponent_value(-4 * self.d.value, self.p, omega)

    def __repr__(self) -> str:
        return f"FiberIsogeny(p={self.p}, d={self.d.value}, alpha={self.alpha.value})"


def tau_apply(f: FiberIsogeny, P: CurvePoint) -> CurvePoint:
    if not f.domain.on_curve(P):
        raise NotOnCurveError(f"{P} is not on E_{f.d.value}")
    image = _tau(f.p, f.d.value, P)
    if not f.codomain.on_curve(image):
        raise NotOnCurveError(f"tau({P}) = {image} left E_{f.d_prime.value}")
    return image


def f_T(f: FiberIsogeny, P: CurvePoint) -> FieldElement:
    """y - 3 alpha on E_{d'}; divisor 3[T] - 3[infinity]"""
    if P.is_infinity:
        raise KernelPointError("f_T has a pole at infinity")
    return f.prime.element(P.y - 3 * f.alpha.value)


def g_T(f: FiberIsogeny, P: CurvePoint) -> FieldElement:
    """(y - alpha)/x on E_d, whose cube is f_T after tau"""
    if P.is_infinity or P.x == 0:
        raise KernelPointError(f"g_T is not evaluated on the kernel point {P}")
    return f.prime.element(P.y - f.alpha.value) / P.x


def _tate_exponent(f: FiberIsogeny, P: CurvePoint, cubic: Callable[[int], int], t_exponent: int) -> int:
    if P.is_infinity:
        return 0
    if P.x == 0:
        # P = kT with k = 1 at y = 3 alpha and k = 2 at y = -3 alpha
        k = 1 if P.y == f.T.y else 2
        return k * t_exponent % 3
    return cubic(P.y - 3 * f.alpha.value)


def chi_tate(f: FiberIsogeny, P: CurvePoint, omega: Optional[int] = None) -> CubicCharValue:
    """The character through the explicit pairing formulas"""
    p = f.p
    exponent = _tate_exponent(
        f, P, lambda a: cubic_exponent_value(a, p, omega), f.minus_four_d_exponent(omega)
    )
    return CubicCharValue(exponent)


def image_set(f: FiberIsogeny) -> FrozenSet[CurvePoint]:
    return f.image_set


def chi_coset(f: FiberIsogeny, P: CurvePoint, Q: Optional[CurvePoint] = None) -> CubicCharValue:
    """The unique k with P - kQ in the image, as zeta**k"""
    image = f.image_set
    if Q is None:
        Q = f.Q
    elif Q in image:
        raise ValueError(f"{Q} lies in the image and cannot represent a coset")

    R = P
    for k in range(3):
        if R in image:
            return CubicCharValue(k)
        R = f.codomain.subtract(R, Q)
    raise CharacterMismatchError(f"No k puts {P} - kQ into the image of {f}")


def _bucket_sum(f: FiberIsogeny, exponent_of: Callable[[CurvePoint], int]) -> Tuple[CyclotomicSum, int]:
    buckets = [0, 0, 0]
    for pt in f.codomain_points:
        buckets[exponent_of(pt)] += pt.x
    total = CyclotomicSum.from_buckets(buckets)
    value = total.integer_value()
    require_divisible(value, f.p, f"S_tau for d = {f.d.value}")
    return total, value


def fiber_sum(f: FiberIsogeny, omega: Optional[int] = None) -> Tuple[CyclotomicSum, int]:
    """S_{tau_d} as a cyclotomic sum and, once balanced, as an integer divisible by p"""
    p = f.p
    if omega is None and p < Config.TABLE_LIMIT:
        table = residue_tables(p).cubic_exponent_list
        cubic = lambda a: table[a % p]  # noqa: E731
    else:
        cubic = lambda a: cubic_exponent_value(a, p, omega)  # noqa: E731
    t_exponent = f.minus_four_d_exponent(omega)
    return _bucket_sum(f, lambda pt: _tate_exponent(f, pt, cubic, t_exponent))


def coset_fiber_sum(f: FiberIsogeny, Q: Optional[CurvePoint] = None) -> Tuple[CyclotomicSum, int]:
    """S_{tau_d} through chi_coset with an explicit (or the stored) Q"""
    return _bucket_sum(f, lambda pt: chi_coset(f, pt, Q).exponent)


def character_orientation(f: FiberIsogeny) -> Orientation:
    """Whether chi_coset equals chi_tate or its conjugate across the whole fiber"""
    same = conjugate = True
    for pt in [INFINITY, *f.codomain_points]:
        tate = chi_tate(f, pt)
        coset = chi_coset(f, pt)
        same &= coset == tate
        conjugate &= coset == tate.conjugate()
    if same:
        return Orientation.SAME
    if conjugate:
        return Orientation.CONJUGATE
    raise CharacterMismatchError(f"chi_coset mixes chi_tate and its conjugate on {f}")


def t_in_image(f: FiberIsogeny) -> bool:
    """T is in the image exactly when -4d is a cube"""
    return f.minus_four_d_exponent() == 0


def cube_root_witness(f: FiberIsogeny) -> Optional[CurvePoint]:
    """(delta, alpha) with delta^3 = -4d, which tau sends to T"""
    target = -4 * f.d.value % f.p
    for delta in range(1, f.p):
        if pow(delta, 3, f.p) == target:
            return CurvePoint(delta, f.alpha.value)
    return None


def square_fibers(prime: Prime) -> List[int]:
    """The nonzero squares d mod p, ascending"""
    p = prime.p
    return sorted({z * z % p for z in range(1, (p - 1) // 2 + 1)})
