"""Exception types shared across the package."""


class MandelentError(Exception):
    """Base class for all library errors."""


class ParseError(MandelentError, ValueError):
    """Malformed angle, string or portrait text."""


class PreconditionError(MandelentError, ValueError):
    """An operation was called outside its domain."""


class UnlinkedLeavesError(PreconditionError):
    """Two leaves cross, so they cannot be compared."""


class DegenerateBranch(PreconditionError):
    """The bisection interval contains no further window."""


class PeriodicCriticalPoint(PreconditionError):
    """The critical value angle is periodic (center of a hyperbolic component)."""


class NotInOmega(PreconditionError):
    """An angle whose orbit enters the forbidden set or the alpha portrait."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class ConvergenceError(MandelentError, RuntimeError):
    """A numerical iteration hit its cap."""
