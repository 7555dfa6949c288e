"""Exception types raised across the package."""


class YolkError(Exception):
    """Base class for every error raised by yolkkit."""


class ZeroNormal(YolkError, ValueError):
    pass


class DimensionMismatch(YolkError, ValueError):
    pass


class CoincidentPoints(YolkError, ValueError):
    pass


class PivotNotOnHyperplane(YolkError, ValueError):
    pass


class EmptyElectorate(YolkError, ValueError):
    pass


class NoSecondPoint(YolkError, ValueError):
    pass


class UnsupportedDimension(YolkError, ValueError):
    pass


class EmptyConstraintSet(YolkError, ValueError):
    pass


class InfeasibleProgram(YolkError, RuntimeError):
    pass


class NotTangent(YolkError, ValueError):
    pass


class NoCover(YolkError, ValueError):
    pass


class InvalidParams(YolkError, ValueError):
    pass


class DegenerateDenominator(YolkError, ArithmeticError):
    pass


class InsufficientTangents(YolkError, ValueError):
    pass


class InvalidParameter(YolkError, ValueError):
    pass


class ParseError(YolkError, ValueError):
    """Malformed points file; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ConvergenceFailure(YolkError, RuntimeError):
    """The yolk solver hit its iteration cap; ``best`` holds the best iterate."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
