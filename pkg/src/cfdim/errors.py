"""Exception hierarchy shared by all cfdim modules."""


class CfdimError(Exception):
    """Base class for every error raised by cfdim."""


class ValidationError(CfdimError, ValueError):
    """A parameter violates an operation's precondition."""


class DomainError(ValidationError):
    """An argument lies outside the region where a formula is defined."""


class PrecisionExhausted(CfdimError):
    """The certified enclosure of a real ran out before enough digits were emitted."""

    def __init__(self, message, digits=()):
        super().__init__(message)
        self.digits = tuple(digits)


class SolverError(CfdimError):
    """A numerical procedure failed to produce a trustworthy value."""


class BudgetExceeded(SolverError):
    """An enumeration would exceed its configured size cap."""


class BracketError(SolverError):
    """A root finder's bracket does not contain a sign change."""


class ConvergenceError(SolverError):
    """An iterative approximation did not settle within its limits."""


class TableauError(SolverError):
    """A pressure tableau violated a monotonicity it must satisfy."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics
