"""
Modular arithmetic over F_p: primes, residues, square roots and the
quadratic / cubic residue symbols
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

from .errors import (
    DivisionByZeroError,
    InvalidPrimeError,
    ZeroArgumentError,
)

WORD_LIMIT = 1 << 63

# Bases that make Miller-Rabin deterministic below 2^64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for word-size integers"""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q

    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, slots=True)
class Prime:
    """An odd prime p > 3 that fits in a machine word"""

    p: int

    def __post_init__(self):
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InvalidPrimeError(f"Modulus must be an integer, got {self.p!r}")
        if self.p <= 3:
            raise InvalidPrimeError(f"Modulus must exceed 3, got {self.p}")
        if self.p >= WORD_LIMIT:
            raise InvalidPrimeError(f"Modulus {self.p} does not fit in a machine word")
        if not is_prime(self.p):
            raise InvalidPrimeError(f"{self.p} is not prime")

    @property
    def p_mod_3(self) -> int:
        return self.p % 3

    @property
    def p_mod_4(self) -> int:
        return self.p % 4

    def element(self, value: int) -> "FieldElement":
        """Reduce any integer to its canonical residue"""
        return FieldElement(value % self.p, self)

    def require_cubic(self) -> None:
        if self.p % 3 != 1:
            raise InvalidPrimeError(f"p = {self.p} is not 1 mod 3")

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)


Operand = Union["FieldElement", int]


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A residue mod p held in canonical form 0 <= value < p"""

    value: int
    prime: Prime

    def __post_init__(self):
        if not 0 <= self.value < self.prime.p:
            raise ValueError(f"{self.value} not in field range 0 to {self.prime.p - 1}")

    def _coerce(self, other: Operand) -> int:
        if isinstance(other, FieldElement):
            if other.prime != self.prime:
                raise TypeError("Cannot combine residues of different fields")
            return other.value
        return other % self.prime.p

    def _make(self, value: int) -> "FieldElement":
        return FieldElement(value % self.prime.p, self.prime)

    def __add__(self, other: Operand) -> "FieldElement":
        return self._make(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "FieldElement":
        return self._make(self.value - self._coerce(other))

    def __rsub__(self, other: Operand) -> "FieldElement":
        return self._make(self._coerce(other) - self.value)

    def __mul__(self, other: Operand) -> "FieldElement":
        return self._make(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return self._make(-self.value)

    def __truediv__(self, other: Operand) -> "FieldElement":
        denominator = other if isinstance(other, FieldElement) else self.prime.element(other)
        return self * mod_inv(denominator)

    def __pow__(self, exponent: int) -> "FieldElement":
        return mod_pow(self, exponent)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement_{self.prime.p}({self.value})"


@dataclass(frozen=True, slots=True)
class CubicCharValue:
    """zeta**exponent in the complex cube roots of unity"""

    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 3)

    def __mul__(self, other: "CubicCharValue") -> "CubicCharValue":
        return CubicCharValue(self.exponent + other.exponent)

    def __pow__(self, k: int) -> "CubicCharValue":
        return CubicCharValue(self.exponent * k)

    def conjugate(self) -> "CubicCharValue":
        return CubicCharValue(-self.exponent)

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0


def lift(a: FieldElement) -> int:
    """The integer {a} in [0, p-1]"""
    return a.value


def mod_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise ValueError(f"Exponent must be non-negative, got {e}")
    # builtin pow is square-and-multiply with 0**0 == 1
    return FieldElement(pow(a.value, e, a.prime.p), a.prime)


def mod_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise DivisionByZeroError(f"0 has no inverse mod {a.prime.p}")
    return FieldElement(pow(a.value, -1, a.prime.p), a.prime)


def legendre_value(a: int, p: int) -> int:
    """Quadratic residue symbol of an integer; p - 1 is read as -1"""
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def legendre(a: FieldElement) -> int:
    return legendre_value(a.value, a.prime.p)


def _find_nonsquare(p: int) -> int:
    for z in range(2, p):
        if legendre_value(z, p) == -1:
            return z
    raise InvalidPrimeError(f"Could not find a quadratic non-residue modulo {p}")


def sqrt_value(n: int, p: int) -> Optional[int]:
    """Smaller square root of n mod p (Tonelli-Shanks), or None"""
    n %= p
    if n == 0:
        return 0
    if legendre_value(n, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(n, (p + 1) // 4, p)
        return min(r, p - r)

    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1

    c = pow(_find_nonsquare(p), q, p)
    r = pow(n, (q + 1) // 2, p)
    t = pow(n, q, p)
    m = s
    while t != 1:
        i, temp = 0, t
        while temp != 1:
            temp = temp * temp % p
            i += 1
            if i == m:
                raise ArithmeticError("Tonelli-Shanks: t^(2^i) never reached 1")
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        t = t * b * b % p
        c = b * b % p
        m = i
    return min(r, p - r)


def sqrt_mod(a: FieldElement) -> Tuple[FieldElement, ...]:
    """All square roots of a, ascending by lift; empty for a non-residue"""
    r = sqrt_value(a.value, a.prime.p)
    if r is None:
        return ()
    if r == 0:
        return (FieldElement(0, a.prime),)
    return (FieldElement(r, a.prime), FieldElement(a.prime.p - r, a.prime))


@lru_cache(maxsize=256)
def omega_value(p: int) -> int:
    """Smaller-lift root of t^2 + t + 1; it stands for zeta"""
    if p % 3 != 1:
        raise InvalidPrimeError(f"p = {p} is not 1 mod 3; no primitive cube root of unity")
    s = sqrt_value(-3, p)
    half = pow(2, -1, p)
    roots = ((-1 + s) * half % p, (-1 - s) * half % p)
    return min(roots)


def canonical_omega(prime: Prime) -> FieldElement:
    return FieldElement(omega_value(prime.p), prime)


def cubic_exponent_value(a: int, p: int, omega: Optional[int] = None) -> int:
    """k with a^((p-1)/3) == omega^k, for a nonzero residue a"""
    a %= p
    if a == 0:
        raise ZeroArgumentError("Cubic residue symbol is undefined at 0")
    w = omega_value(p) if omega is None else omega % p
    r = pow(a, (p - 1) // 3, p)
    if r == 1:
        return 0
    if r == w:
        return 1
    if r == w * w % p:
        return 2
    raise InvalidPrimeError(f"{w} is not a primitive cube root of unity mod {p}")


def cubic_symbol(a: FieldElement, omega: Optional[Operand] = None) -> CubicCharValue:
    """(a/p)_3 read through the canonical omega, or through an explicit one"""
    a.prime.require_cubic()
    w = None if omega is None else int(omega)
    return CubicCharValue(cubic_exponent_value(a.value, a.prime.p, w))


from .tables import ResidueTables, residue_tables  # noqa: E402

__all__ = [
    "CubicCharValue",
    "FieldElement",
    "Prime",
    "ResidueTables",
    "canonical_omega",
    "cubic_exponent_value",
    "cubic_symbol",
    "is_prime",
    "legendre",
    "legendre_value",
    "lift",
    "mod_inv",
    "mod_pow",
    "omega_value",
    "residue_tables",
    "sqrt_mod",
    "sqrt_value",
]
