"""
The elliptic surface y^2 = x^3 + z^2 with the singular fiber z = 0 removed,
the fiberwise 3-isogeny glued into a global map, and the global sum
computed fiberwise, as a direct triple sum, and through the row identity.

The fiber over w is E_{w^2}. The global map sends the fiber over z to the
fiber over beta*z, where beta is the fixed square root of -27: that fiber is
E_{-27 z^2}, the codomain of tau_{z^2}.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, model_validator

from arith import (
    CubicCharValue,
    Prime,
    cubic_exponent_value,
    legendre_value,
    residue_tables,
    sqrt_value,
)
from arith.curve import CurvePoint
from arith.errors import (
    KernelPointError,
    LemmaViolationError,
    NotOnCurveError,
    ZeroArgumentError,
)
from config.settings import Config

from . import CyclotomicSum, IntStr, require_divisible
from .isogeny3 import FiberIsogeny, _tau, chi_tate, fiber_sum, square_fibers

logger = logging.getLogger(__name__)


class SurfaceMethod(str, Enum):
    FIBERWISE = "fiberwise"
    DIRECT = "direct"
    FAST = "fast"
    POINTWISE = "pointwise"


class SurfaceSumResult(BaseModel):
    p: int
    total: CyclotomicSum
    integer_value: IntStr
    quotient: IntStr
    method: SurfaceMethod

    @model_validator(mode="after")
    def _balanced_and_divisible(self):
        if not self.total.is_integral or self.total.integer_value() != self.integer_value:
            raise ValueError(f"total {self.total} does not match integer value {self.integer_value}")
        if self.integer_value != self.p * self.quotient:
            raise ValueError(f"{self.integer_value} != {self.p} * {self.quotient}")
        return self


def _result(prime: Prime, total: CyclotomicSum, method: SurfaceMethod) -> SurfaceSumResult:
    value = total.integer_value()
    quotient = require_divisible(value, prime.p, f"{method.value} surface sum")
    return SurfaceSumResult(p=prime.p, total=total, integer_value=value, quotient=quotient, method=method)


@lru_cache(maxsize=64)
def beta_value(p: int) -> int:
    """Smaller-lift square root of -27"""
    root = sqrt_value(-27, p)
    if root is None:
        raise ValueError(f"-27 is not a square mod {p}")
    return root


@dataclass(frozen=True, slots=True)
class SurfacePoint:
    """(x, y, z) with y^2 = x^3 + z^2 and z != 0"""

    prime: Prime
    x: int
    y: int
    z: int

    def __post_init__(self):
        p = self.prime.p
        if not all(0 <= v < p for v in (self.x, self.y, self.z)):
            raise ValueError(f"Coordinates of {self} must be canonical lifts")
        if self.z == 0:
            raise ValueError("z = 0 is the singular fiber and is not on the surface")
        if (self.y * self.y - self.x ** 3 - self.z * self.z) % p:
            raise NotOnCurveError(f"({self.x}, {self.y}, {self.z}) is not on y^2 = x^3 + z^2")

    @property
    def fiber(self) -> int:
        """The projection onto the z-line"""
        return self.z


def tau_surface(pt: SurfacePoint) -> SurfacePoint:
    """tau_{z^2} on the first two coordinates, z -> beta z on the third"""
    if pt.x == 0:
        raise KernelPointError(f"({pt.x}, {pt.y}, {pt.z}) lies in the kernel of tau")
    p = pt.prime.p
    image = _tau(p, pt.z * pt.z % p, CurvePoint(pt.x, pt.y))
    return SurfacePoint(pt.prime, image.x, image.y, beta_value(p) * pt.z % p)


@lru_cache(maxsize=1024)
def surface_fiber(prime: Prime, w: int) -> FiberIsogeny:
    """The fiber isogeny whose codomain is the surface fiber over w, with T = (0, w)"""
    p = prime.p
    d = -w * w * pow(27, -1, p) % p
    return FiberIsogeny(prime, d, alpha=w * pow(3, -1, p) % p)


def chi_surface(pt: SurfacePoint, omega: Optional[int] = None) -> CubicCharValue:
    return chi_tate(surface_fiber(pt.prime, pt.z), CurvePoint(pt.x, pt.y), omega)


def _fiber_chunk(p: int, ds: Sequence[int]) -> List[Tuple[int, int, int]]:
    prime = Prime(p)
    out = []
    for d in ds:
        total, _ = fiber_sum(FiberIsogeny(prime, d))
        out.append((total.a, total.b, total.c))
    return out


def surface_sum_fiberwise(prime: Prime, workers: int = 1) -> SurfaceSumResult:
    """Twice the sum of S_{tau_d} over the nonzero squares d"""
    prime.require_cubic()
    ds = square_fibers(prime)
    if workers > 1 and len(ds) > 1:
        chunks = [ds[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = [t for chunk in pool.map(_fiber_chunk, [prime.p] * len(chunks), chunks) for t in chunk]
    else:
        parts = _fiber_chunk(prime.p, ds)

    total = CyclotomicSum()
    for a, b, c in parts:
        total = total + CyclotomicSum(a=a, b=b, c=c)
    logger.debug("Fiberwise sum over %d fibers for p=%d", len(ds), prime.p)
    return _result(prime, total.scaled(2), SurfaceMethod.FIBERWISE)


def surface_sum_direct(prime: Prime) -> SurfaceSumResult:
    """
    Sum of x * ((y - beta z)/p)_3 over z in [1, p-1], y in [0, p-1], x in [1, p-1]
    with y^2 = x^3 - 27 z^2. For fixed (z, y) the admissible x are the
    nonzero cube roots of y^2 + 27 z^2.
    """
    prime.require_cubic()
    p = prime.p
    tables = residue_tables(p)
    beta = beta_value(p)
    ys = tables.xs
    buckets = [0, 0, 0]
    for z in range(1, p):
        weights = tables.cube_root_sum[(tables.squares + 27 * z * z) % p]
        exponents = tables.cubic_exponent[(ys - beta * z % p) % p]
        for k in range(3):
            buckets[k] += int(weights[exponents == k].sum())
    return _result(prime, CyclotomicSum.from_buckets(buckets), SurfaceMethod.DIRECT)


def surface_sum_pointwise(prime: Prime) -> SurfaceSumResult:
    """Sum of {x(P)} chi(P) over every point of the surface, straight from the definition"""
    prime.require_cubic()
    p = prime.p
    tables = residue_tables(p)
    buckets = [0, 0, 0]
    for w in range(1, p):
        for x in range(1, p):
            for y in tables.square_roots[(x * x * x + w * w) % p]:
                buckets[chi_surface(SurfacePoint(prime, x, y, w)).exponent] += x
    return _result(prime, CyclotomicSum.from_buckets(buckets), SurfaceMethod.POINTWISE)


def surface_sum_fast(prime: Prime) -> SurfaceSumResult:
    """Sum over x != 0 of x * (-1 - (x/p))"""
    prime.require_cubic()
    p = prime.p
    if p < Config.TABLE_LIMIT:
        xs = residue_tables(p).xs[1:]
        value = int((xs * (-1 - residue_tables(p).legendre[1:])).sum())
    else:
        value = sum(x * (-1 - legendre_value(x, p)) for x in range(1, p))
    return _result(prime, CyclotomicSum(a=value), SurfaceMethod.FAST)


SURFACE_METHODS = {
    SurfaceMethod.FIBERWISE: surface_sum_fiberwise,
    SurfaceMethod.DIRECT: surface_sum_direct,
    SurfaceMethod.FAST: surface_sum_fast,
    SurfaceMethod.POINTWISE: surface_sum_pointwise,
}


def _require_nonzero(prime: Prime, x: int) -> int:
    x %= prime.p
    if x == 0:
        raise ZeroArgumentError("x = 0 is excluded from the row sums")
    return x


def s_xy(prime: Prime, x: int, y: int) -> int:
    """The inner z-sum in closed form: 0, 2 or -1"""
    prime.require_cubic()
    p = prime.p
    x = _require_nonzero(prime, x)
    v = (y * y - x ** 3) % p
    if legendre_value(v, p) != 1:
        return 0
    # (y + r)(y - r) = x^3, so the two roots give mutually inverse symbols
    if p < Config.TABLE_LIMIT:
        tables = residue_tables(p)
        exponent = tables.cubic_exponent_of(y + tables.sqrt_of(v))
    else:
        exponent = cubic_exponent_value(y + sqrt_value(v, p), p)
    return 2 if exponent == 0 else -1


def s_xy_direct(prime: Prime, x: int, y: int) -> CyclotomicSum:
    """Sum over z in [1, p-1] of ((y - beta z)/p)_3 where y^2 = x^3 - 27 z^2"""
    prime.require_cubic()
    p = prime.p
    x = _require_nonzero(prime, x)
    beta = beta_value(p)
    buckets = [0, 0, 0]
    for z in range(1, p):
        if (y * y - x ** 3 + 27 * z * z) % p == 0:
            buckets[cubic_exponent_value(y - beta * z, p)] += 1
    return CyclotomicSum.from_buckets(buckets)


def row_sum(prime: Prime, x: int) -> int:
    """Sum of s(x, y) over y; must equal -1 - (x/p)"""
    x = _require_nonzero(prime, x)
    total = sum(s_xy(prime, x, y) for y in range(prime.p))
    expected = -1 - legendre_value(x, prime.p)
    if total != expected:
        raise LemmaViolationError(f"row sum at x = {x} is {total}, expected {expected}")
    return total


def row_profile(prime: Prime, x: int) -> Dict[int, int]:
    """How often s(x, y) takes each of its values 2, -1, 0 as y varies"""
    counts = {2: 0, -1: 0, 0: 0}
    for y in range(prime.p):
        counts[s_xy(prime, x, y)] += 1
    return counts


def count_y_quadratic(prime: Prime, x: int) -> int:
    """|{y : ((y^2 - x^3)/p) = 1}|"""
    p = prime.p
    x = _require_nonzero(prime, x)
    if p < Config.TABLE_LIMIT:
        tables = residue_tables(p)
        return int((tables.legendre[(tables.squares - x ** 3 % p) % p] == 1).sum())
    return sum(1 for y in range(p) if legendre_value(y * y - x ** 3, p) == 1)


def count_hyperbola(prime: Prime, x: int) -> int:
    """|{(y, c) : y^2 - c^2 = x^3}|, which is p - 1 for x != 0"""
    p = prime.p
    x = _require_nonzero(prime, x)
    tables = residue_tables(p)
    return int((1 + tables.legendre[(tables.squares - x ** 3 % p) % p]).sum())


def indicator_count(prime: Prime) -> int:
    """Number of triples (x, y, z), x and z nonzero, with y^2 = x^3 - 27 z^2"""
    p = prime.p
    tables = residue_tables(p)
    root_counts = np.bincount(tables.cubes[1:], minlength=p)
    return int(sum(root_counts[(tables.squares + 27 * z * z) % p].sum() for z in range(1, p)))
