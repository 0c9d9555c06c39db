"""
Per-prime lookup tables for the O(p^2) sweeps.

Everything is built once per prime with numpy and cached; the scalar
symbol functions in ``arith`` stay the reference definitions and the
tests hold the two in agreement.
"""

import logging
from functools import cached_property, lru_cache
from typing import List, Optional, Tuple

import numpy as np

from config.settings import Config

from .errors import InvalidPrimeError, ZeroArgumentError

logger = logging.getLogger(__name__)


class ResidueTables:
    """Legendre, cubic-exponent and root tables of F_p"""

    def __init__(self, p: int):
        if p >= Config.TABLE_LIMIT:
            raise InvalidPrimeError(
                f"p = {p} exceeds the residue table limit {Config.TABLE_LIMIT}"
            )
        self.p = p
        # x*x stays below 2^63 for every p under the table limit
        self.xs = np.arange(p, dtype=np.int64)
        self.squares = self.xs * self.xs % p
        self.cubes = self.squares * self.xs % p
        logger.debug("Built residue tables for p=%d", p)

    @cached_property
    def legendre(self) -> np.ndarray:
        table = np.full(self.p, -1, dtype=np.int64)
        table[self.squares] = 1
        table[0] = 0
        return table

    @cached_property
    def legendre_list(self) -> List[int]:
        return self.legendre.tolist()

    @cached_property
    def cubic_exponent(self) -> np.ndarray:
        """Exponent of (a/p)_3 against the canonical omega; entry 0 is unused"""
        from . import cubic_exponent_value

        if self.p % 3 != 1:
            raise InvalidPrimeError(f"p = {self.p} is not 1 mod 3")
        nonzero_cubes = self.cubes[1:]
        # any c whose symbol is omega**1 spreads the cube class onto the other two
        c = next(a for a in range(2, self.p) if cubic_exponent_value(a, self.p) == 1)
        table = np.zeros(self.p, dtype=np.int64)
        table[c * nonzero_cubes % self.p] = 1
        table[(c * c % self.p) * nonzero_cubes % self.p] = 2
        table[nonzero_cubes] = 0
        return table

    @cached_property
    def cubic_exponent_list(self) -> List[int]:
        return self.cubic_exponent.tolist()

    @cached_property
    def cube_root_sum(self) -> np.ndarray:
        """Sum of the lifts of the nonzero cube roots of each residue"""
        table = np.zeros(self.p, dtype=np.int64)
        np.add.at(table, self.cubes[1:], self.xs[1:])
        return table

    @cached_property
    def cube_roots_list(self) -> List[Tuple[int, ...]]:
        roots: List[List[int]] = [[] for _ in range(self.p)]
        for x, v in enumerate(self.cubes.tolist()):
            roots[v].append(x)
        return [tuple(r) for r in roots]

    @cached_property
    def square_roots(self) -> List[Tuple[int, ...]]:
        """Square roots of each residue, ascending"""
        roots: List[List[int]] = [[] for _ in range(self.p)]
        for y, v in enumerate(self.squares.tolist()):
            roots[v].append(y)
        return [tuple(r) for r in roots]

    def cubic_exponent_of(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroArgumentError("Cubic residue symbol is undefined at 0")
        return self.cubic_exponent_list[a]

    def sqrt_of(self, a: int) -> Optional[int]:
        roots = self.square_roots[a % self.p]
        return roots[0] if roots else None


@lru_cache(maxsize=8)
def residue_tables(p: int) -> ResidueTables:
    return ResidueTables(int(p))
