"""
h_p*: the class number of Q(sqrt(-p)) for p = 3 mod 4, and 0 for p = 1 mod 4.

Two independent oracles: Dirichlet's character sum over x (x/p), and a count
of reduced primitive binary quadratic forms of discriminant -p.
"""

import logging
import math
from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator

from arith import Prime, legendre_value, residue_tables
from arith.errors import ArithmeticViolationError
from config.settings import Config

logger = logging.getLogger(__name__)


class HStarMethod(str, Enum):
    DIRICHLET = "dirichlet"
    FORMS = "forms"


class HStarResult(BaseModel):
    p: int
    h_star: int = Field(ge=0)
    method: HStarMethod

    @model_validator(mode="after")
    def _matches_residue_class(self):
        if self.p % 4 == 1 and self.h_star != 0:
            raise ValueError(f"h* must be 0 for p = {self.p} = 1 mod 4")
        if self.p % 4 == 3 and self.h_star < 1:
            raise ValueError(f"h* must be positive for p = {self.p} = 3 mod 4")
        return self


def dirichlet_sum(prime: Prime) -> int:
    """Sum over x in [1, p-1] of x * (x/p)"""
    p = prime.p
    if p < Config.TABLE_LIMIT:
        tables = residue_tables(p)
        return int((tables.xs * tables.legendre).sum())
    return sum(x * legendre_value(x, p) for x in range(1, p))


def h_star_dirichlet(prime: Prime) -> HStarResult:
    p = prime.p
    if p % 4 == 1:
        return HStarResult(p=p, h_star=0, method=HStarMethod.DIRICHLET)

    total = dirichlet_sum(prime)
    if total % p:
        raise ArithmeticViolationError(f"p = {p} does not divide the Dirichlet sum {total}")
    h = -total // p
    if h <= 0:
        raise ArithmeticViolationError(f"Dirichlet sum {total} gives non-positive h* = {h} for p = {p}")
    return HStarResult(p=p, h_star=h, method=HStarMethod.DIRICHLET)


def reduced_forms(discriminant: int) -> List[Tuple[int, int, int]]:
    """
    Reduced primitive forms (a, b, c) with b^2 - 4ac = discriminant < 0:
    |b| <= a <= c, and b >= 0 when |b| = a or a = c.
    """
    if discriminant >= 0 or discriminant % 4 not in (0, 1):
        raise ValueError(f"{discriminant} is not a negative discriminant")

    D = -discriminant
    forms = []
    for a in range(1, math.isqrt(D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append((a, b, c))
    return forms


def h_star_forms(prime: Prime) -> HStarResult:
    p = prime.p
    if p % 4 == 1:
        return HStarResult(p=p, h_star=0, method=HStarMethod.FORMS)
    forms = reduced_forms(-p)
    logger.debug("Reduced forms of discriminant -%d: %s", p, forms)
    return HStarResult(p=p, h_star=len(forms), method=HStarMethod.FORMS)


H_STAR_METHODS = {
    HStarMethod.DIRICHLET: h_star_dirichlet,
    HStarMethod.FORMS: h_star_forms,
}
