"""Exception types shared across the package."""


class KostkaError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(KostkaError, ValueError):
    """Input does not satisfy an operation's preconditions."""


class BudgetExceeded(KostkaError):
    """An enumeration would exceed its configured cap."""

    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds budget {cap}")


class PointednessViolation(KostkaError):
    """The generator cone contains a line, so partition functions are not finite."""


class InvariantViolation(KostkaError):
    """An internal consistency check failed (e.g. two engines disagree)."""
