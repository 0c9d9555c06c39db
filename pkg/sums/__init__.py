"""
Shared pieces of the character sum computations
"""

import logging
from typing import Annotated, Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, PlainSerializer

from arith.errors import DivisibilityViolationError, NonIntegralSumError

logger = logging.getLogger(__name__)

# Integers go out as decimal strings in JSON; parsing accepts them back
IntStr = Annotated[int, PlainSerializer(str, return_type=str, when_used="json")]


class VerifierBase:
    """Base class for verifiers with common functionality"""

    async def log_interaction(self, action: str, context: Dict[str, Any]):
        """Log verifier actions for debugging and timing analysis"""
        logger.debug("Verifier action: %s, context: %s", action, context)


class CyclotomicSum(BaseModel):
    """a + b*zeta + c*zeta^2 with integer counts"""

    model_config = ConfigDict(frozen=True)

    a: IntStr = 0
    b: IntStr = 0
    c: IntStr = 0

    @classmethod
    def from_buckets(cls, buckets) -> "CyclotomicSum":
        a, b, c = buckets
        return cls(a=int(a), b=int(b), c=int(c))

    @property
    def is_integral(self) -> bool:
        return self.b == self.c

    def integer_value(self) -> int:
        """The rational integer a - b; raises when the zeta buckets are unbalanced"""
        if not self.is_integral:
            raise NonIntegralSumError(f"{self} is not a rational integer (b != c)")
        return self.a - self.b

    def conjugate(self) -> "CyclotomicSum":
        return CyclotomicSum(a=self.a, b=self.c, c=self.b)

    def scaled(self, k: int) -> "CyclotomicSum":
        return CyclotomicSum(a=k * self.a, b=k * self.b, c=k * self.c)

    def __add__(self, other: "CyclotomicSum") -> "CyclotomicSum":
        return CyclotomicSum(a=self.a + other.a, b=self.b + other.b, c=self.c + other.c)

    def __str__(self) -> str:
        return f"{self.a} + {self.b}ζ + {self.c}ζ²"


def require_divisible(value: int, p: int, what: Optional[str] = None) -> int:
    """value / p, raising when p does not divide value"""
    if value % p:
        raise DivisibilityViolationError(f"{what or 'sum'} = {value} is not divisible by p = {p}")
    return value // p


__all__ = ["CyclotomicSum", "IntStr", "VerifierBase", "require_divisible"]
