"""
Exception hierarchy for the isogeny character sum toolkit
"""


class IsoSumError(Exception):
    """Base class for every condition the toolkit signals"""


class InvalidPrimeError(IsoSumError, ValueError):
    """The modulus is not an admissible prime (or fails a congruence precondition)"""


class DivisionByZeroError(IsoSumError, ZeroDivisionError):
    """Inverse of zero requested"""


class ZeroArgumentError(IsoSumError, ValueError):
    """A residue symbol was asked for at zero"""


class SingularCurveError(IsoSumError, ValueError):
    """Curve coefficients give a vanishing discriminant"""


class NotOnCurveError(IsoSumError, ValueError):
    """A point does not satisfy the curve (or surface) equation"""


class KernelPointError(IsoSumError, ValueError):
    """A function was evaluated at a kernel point or at infinity"""


class NotASquareError(IsoSumError, ValueError):
    """A fiber parameter d was required to be a nonzero square"""


class NonIntegralSumError(IsoSumError, ArithmeticError):
    """A cyclotomic sum has unbalanced zeta buckets"""


class DivisibilityViolationError(IsoSumError, ArithmeticError):
    """An integer sum expected to be divisible by p is not"""


class LemmaViolationError(IsoSumError, ArithmeticError):
    """A closed-form row identity failed"""


class ArithmeticViolationError(IsoSumError, ArithmeticError):
    """The Dirichlet character sum broke divisibility or sign"""


class CharacterMismatchError(IsoSumError, ArithmeticError):
    """Coset and pairing characters disagree beyond conjugation"""


class NoRationalIsomorphismError(IsoSumError, ValueError):
    """No F_p-isomorphism from the isogeny codomain back to the curve"""
