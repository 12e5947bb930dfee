"""Exception types shared across the toolkit.

Domain errors derive from :class:`LplabError` so callers (and the CLI) can
separate them from genuine bugs, which surface as :class:`ContractViolation`.
"""


class LplabError(Exception):
    """Base class for all domain errors raised by lplab."""


class InvalidParameter(LplabError):
    """A constructor or generator parameter is out of range."""


class InvalidInput(LplabError):
    """An operation received an input set it cannot work on (e.g. too small)."""


class CapacityExceeded(LplabError):
    """A random generator cannot host the requested number of distinct points."""


class DegenerateInput(LplabError):
    """Geometrically degenerate input, e.g. a bisector of a point with itself."""


class Unsupported(LplabError):
    """The request is outside the supported parameter range."""


class NumericalBudgetExceeded(LplabError):
    """A subdivision / refinement query exhausted its iteration budget.

    Signals (near-)degenerate input rather than an implementation bug: the
    exact sign tests could not separate quantities within the allotted work.
    """


class IdenticalCurves(LplabError):
    """Two bisectors handed to an intersection query are the same point set."""


class DegeneratePosition(LplabError):
    """A drawing violates general position (tangency / concurrence)."""


class PreconditionViolated(LplabError):
    """A documented operation precondition does not hold for the input."""


class EmptyAfterPruning(LplabError):
    """Rich-line filtering removed every line (threshold too large)."""


class StallDetected(LplabError):
    """The intercept partition could not extract a part of the required size."""


class ContractViolation(LplabError):
    """An internal invariant failed; indicates a bug, not bad input."""
