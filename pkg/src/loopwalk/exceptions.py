"""Exception types shared across the package."""


class LoopwalkError(Exception):
    """Base class for domain errors raised by loopwalk."""


class ZeroConstantTermError(LoopwalkError, ZeroDivisionError):
    """Reciprocal requested for a series whose constant term is zero."""


class NonzeroLowCoefficientError(LoopwalkError, ValueError):
    """Division by a power of w would discard a nonzero coefficient."""


class IndexOutOfOrderError(LoopwalkError, IndexError):
    """A coefficient beyond the truncation order was requested."""


class OrderMismatchError(LoopwalkError, ValueError):
    """An operation requires all series to share one truncation order."""


class DegenerateSitesError(LoopwalkError, ValueError):
    """Site positions violate the required strict ordering."""


class InvalidSitesError(LoopwalkError, ValueError):
    """A chain site index is out of range or inconsistent."""


class ContractionViolatedError(LoopwalkError, ValueError):
    """The geometric base has constant term with absolute value >= 1."""


class BudgetExceededError(LoopwalkError, RuntimeError):
    """A simulated path exceeded the configured step cap."""
