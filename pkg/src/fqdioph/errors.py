"""Exception types shared across the package."""


class FqError(Exception):
    """Base class for all package errors."""


class MixedFields(FqError, ValueError):
    """Operands live over different finite fields."""


class FieldDivisionByZero(FqError, ZeroDivisionError):
    pass


class InvalidField(FqError, ValueError):
    pass


class BothZero(FqError, ValueError):
    pass


class ZeroInput(FqError, ValueError):
    pass


class ModuliNotCoprime(FqError, ValueError):
    pass


class SizeGuard(FqError, RuntimeError):
    """An enumeration or search would exceed its configured cap."""


class PrecisionInsufficient(FqError, ValueError):
    """A truncated Laurent series does not carry enough digits for the request."""


class InexactCoefficient(PrecisionInsufficient):
    pass


class SupportNotCovered(FqError, ValueError):
    pass


class NotLiftable(FqError, ValueError):
    pass


class NoRoot(FqError):
    """No common root exists modulo ``w**level``."""

    def __init__(self, w, level, message=None):
        self.w = w
        self.level = level
        super().__init__(message or f"no root modulo ({w})^{level}")


class HypothesisViolated(FqError, ValueError):
    pass


class PortionsDependent(FqError, ValueError):
    pass


class SingularMatrix(FqError, ValueError):
    pass


class DegreesNotDistinct(FqError, ValueError):
    pass


class IdentityViolation(FqError, AssertionError):
    """A computed quantity contradicts an identity that must hold exactly."""


class ParseError(FqError, ValueError):
    pass
