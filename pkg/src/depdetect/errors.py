"""Exception hierarchy."""


class DepDetectError(Exception):
    """Base class for all errors raised by this package."""


class ZeroInverse(DepDetectError, ZeroDivisionError):
    pass


class EvenCharacteristic(DepDetectError, ValueError):
    pass


class PointNotOnCurve(DepDetectError, ValueError):
    pass


class SingularCurve(DepDetectError, ValueError):
    pass


class BadReduction(DepDetectError, ValueError):
    """The prime divides 2 * discriminant (or, in the multiplicative mode,
    some numerator or denominator of the instance)."""


BadPrime = BadReduction


class DecompositionFailure(DepDetectError, RuntimeError):
    """A group-structure invariant was violated; indicates a bug."""


class DimensionMismatch(DepDetectError, ValueError):
    pass


class InvalidInstance(DepDetectError, ValueError):
    pass


class ConvergenceFailure(DepDetectError, ArithmeticError):
    pass


class SingularGram(DepDetectError, ArithmeticError):
    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class FactorizationOverflow(DepDetectError, ValueError):
    pass


class ParseError(DepDetectError, ValueError):
    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
