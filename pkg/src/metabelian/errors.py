"""Exception hierarchy shared by all modules.

Every error raised on bad input derives from :class:`MetabelianError`; the CLI
maps :class:`ParseError` to exit status 2 and every other subclass to 1.
"""


class MetabelianError(Exception):
    """Base class for domain errors."""


class RankMismatch(MetabelianError, ValueError):
    pass


class BadIndex(MetabelianError, ValueError):
    pass


class TrivialBase(MetabelianError, ValueError):
    pass


class NotDivisible(MetabelianError, ArithmeticError):
    pass


class DivisionByZero(MetabelianError, ZeroDivisionError):
    pass


class ZeroEvaluationPoint(MetabelianError, ValueError):
    pass


class ZeroPolynomial(MetabelianError, ValueError):
    pass


class NotInCommutant(MetabelianError, ValueError):
    pass


class NotACode(MetabelianError, ValueError):
    pass


class BadCoordinates(MetabelianError, ValueError):
    pass


class NonIntegerExponent(MetabelianError, ValueError):
    pass


class InternalInconsistency(MetabelianError, RuntimeError):
    """A cross-check between two computations failed; this is a bug."""


class ParseError(MetabelianError, ValueError):
    """Syntax error in a word, polynomial or module expression."""

    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
