"""Exception hierarchy shared by every module of the package."""


class HahnError(Exception):
    """Base class for all errors raised by hahnaut."""


class DimensionError(HahnError, ValueError):
    pass


class LevelExceeded(HahnError, ValueError):
    """An exponent falls outside the (1/L)-lattice a value is defined on."""


class NotOrderAutomorphism(HahnError, ValueError):
    """Base class for matrix membership failures."""


class NotUpperTriangular(NotOrderAutomorphism):
    pass


class BadDiagonal(NotOrderAutomorphism):
    pass


class NotIntegral(NotOrderAutomorphism):
    pass


class DivisionByZero(HahnError, ZeroDivisionError):
    pass


class ConjugationOnRationals(HahnError, ValueError):
    pass


class UnorderedField(HahnError, ValueError):
    pass


class RootUnavailable(HahnError, ValueError):
    pass


class DescriptorMismatch(HahnError, ValueError):
    """Operands live over different groups or coefficient fields."""


MixedDescriptors = DescriptorMismatch


class NotAUnit(HahnError, ValueError):
    pass


class ZeroToNegativePower(HahnError, ZeroDivisionError):
    pass


class ZeroSeries(HahnError, ValueError):
    pass


class NotOneUnit(HahnError, ValueError):
    pass


class PrecisionError(HahnError, ArithmeticError):
    """A truncated computation would need infinitely many terms below the cutoff.

    This happens in lexicographic groups of rank > 1 when a positive exponent is
    infinitesimal compared to the requested precision.
    """


class NotValuationPreserving(HahnError, ValueError):
    pass


class UnrecognizedFieldAut(HahnError, ValueError):
    pass


class NotInternal(HahnError, ValueError):
    pass


class RoundTripMismatch(HahnError, AssertionError):
    pass


class SingularMatrix(HahnError, ValueError):
    pass


class NotExpandable(HahnError, ValueError):
    pass


class NonPositiveScale(HahnError, ValueError):
    pass


class UnknownSuite(HahnError, KeyError):
    pass


class ParseError(HahnError, SyntaxError):
    """Malformed literal; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at offset {position}")
        self.text = text
        self.position = position
