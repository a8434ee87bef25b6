"""Exception types raised across the package."""


class DensityError(Exception):
    """Base class for all errors raised by gcd_density."""


class NotInvertible(DensityError, ValueError):
    pass


class NonResidue(DensityError, ValueError):
    pass


class ZeroInput(DensityError, ValueError):
    pass


class SingularCurve(DensityError, ValueError):
    pass


class BadReduction(DensityError, ValueError):
    pass


class Exhausted(DensityError, RuntimeError):
    pass


class MismatchedCount(DensityError, AssertionError):
    """Brute-force enumeration disagrees with a closed form."""


class WrongCase(DensityError, ValueError):
    pass


class MissingComponent(DensityError, KeyError):
    pass


class TooLarge(DensityError, ValueError):
    pass
