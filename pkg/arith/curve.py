"""
Affine Weierstrass curves y^2 = x^3 + Ax^2 + Bx + C over F_p.

Points carry canonical lifts as coordinates, so a point is hashable and
sorts the same way on every run.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from config.settings import Config

from . import FieldElement, Prime, residue_tables, sqrt_value
from .errors import NotOnCurveError, SingularCurveError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """An affine point (x, y), or the point at infinity when both are None"""

    x: Optional[int] = None
    y: Optional[int] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self) -> Tuple[int, int]:
        return (-1, -1) if self.x is None else (self.x, self.y)

    def __repr__(self) -> str:
        return "Point(infinity)" if self.x is None else f"Point({self.x}, {self.y})"


INFINITY = CurvePoint()


@dataclass(frozen=True, slots=True)
class CurveParams:
    """y^2 = x^3 + a x^2 + b x + c; the Mordell curve E_d has a = b = 0, c = d"""

    prime: Prime
    a: FieldElement
    b: FieldElement
    c: FieldElement

    def __post_init__(self):
        if any(coef.prime != self.prime for coef in (self.a, self.b, self.c)):
            raise TypeError("Curve coefficients must live in the curve's field")
        if self.discriminant() == 0:
            raise SingularCurveError(
                f"y^2 = x^3 + {self.a.value}x^2 + {self.b.value}x + {self.c.value} "
                f"is singular mod {self.prime.p}"
            )

    @classmethod
    def from_ints(cls, prime: Prime, a: int, b: int, c: int) -> "CurveParams":
        return cls(prime, prime.element(a), prime.element(b), prime.element(c))

    @classmethod
    def mordell(cls, prime: Prime, d: int) -> "CurveParams":
        """E_d: y^2 = x^3 + d"""
        return cls.from_ints(prime, 0, 0, d)

    @classmethod
    def mordell_target(cls, prime: Prime, d: int) -> "CurveParams":
        """E_{d'} with d' = -27d, the codomain of the 3-isogeny out of E_d"""
        return cls.from_ints(prime, 0, 0, -27 * d)

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def is_mordell(self) -> bool:
        return self.a.value == 0 and self.b.value == 0

    def discriminant(self) -> int:
        """Discriminant of the cubic x^3 + ax^2 + bx + c, mod p"""
        a, b, c = self.a.value, self.b.value, self.c.value
        disc = a * a * b * b - 4 * b ** 3 - 4 * a ** 3 * c - 27 * c * c + 18 * a * b * c
        return disc % self.p

    def rhs(self, x: int) -> int:
        if self.is_mordell:
            return (x * x * x + self.c.value) % self.p
        return (((x + self.a.value) * x + self.b.value) * x + self.c.value) % self.p

    def point(self, x: int, y: int) -> CurvePoint:
        pt = CurvePoint(x % self.p, y % self.p)
        if not self.on_curve(pt):
            raise NotOnCurveError(f"{pt} is not on {self}")
        return pt

    def on_curve(self, pt: CurvePoint) -> bool:
        if pt.is_infinity:
            return True
        return (pt.y * pt.y - self.rhs(pt.x)) % self.p == 0

    def negate(self, pt: CurvePoint) -> CurvePoint:
        if pt.is_infinity:
            return pt
        return CurvePoint(pt.x, -pt.y % self.p)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        """Chord-tangent sum"""
        if __debug__:
            for pt in (P, Q):
                if not self.on_curve(pt):
                    raise NotOnCurveError(f"{pt} is not on {self}")

        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P

        p = self.p
        if P.x == Q.x:
            if (P.y + Q.y) % p == 0:
                return INFINITY
            slope = (3 * P.x * P.x + 2 * self.a.value * P.x + self.b.value) * pow(2 * P.y, -1, p)
        else:
            slope = (Q.y - P.y) * pow(Q.x - P.x, -1, p)
        slope %= p

        x3 = (slope * slope - self.a.value - P.x - Q.x) % p
        y3 = (slope * (P.x - x3) - P.y) % p
        return CurvePoint(x3, y3)

    def subtract(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self.add(P, self.negate(Q))

    def scalar_mul(self, n: int, P: CurvePoint) -> CurvePoint:
        """n*P by double-and-add"""
        if n < 0:
            return self.scalar_mul(-n, self.negate(P))

        result, current = INFINITY, P
        while n:
            if n & 1:
                result = self.add(result, current)
            current = self.add(current, current)
            n >>= 1
        return result

    def points_at(self, x: int) -> Tuple[CurvePoint, ...]:
        """The 0, 1 or 2 affine points above x, ascending in y"""
        v = self.rhs(x)
        if self.p < Config.TABLE_LIMIT:
            ys = residue_tables(self.p).square_roots[v]
        else:
            r = sqrt_value(v, self.p)
            ys = () if r is None else ((0,) if r == 0 else (r, self.p - r))
        return tuple(CurvePoint(x, y) for y in ys)

    def enumerate_affine(self) -> List[CurvePoint]:
        """Every affine point, ascending x then ascending y"""
        points: List[CurvePoint] = []
        for x in range(self.p):
            points.extend(self.points_at(x))
        return points

    def point_count(self) -> int:
        """|E(F_p)| including infinity"""
        return len(self.enumerate_affine()) + 1

    def trace(self) -> int:
        """Trace of Frobenius p + 1 - |E(F_p)|"""
        return self.p + 1 - self.point_count()

    def __str__(self) -> str:
        return (
            f"E: y^2 = x^3 + {self.a.value}x^2 + {self.b.value}x + {self.c.value} "
            f"over F_{self.p}"
        )
