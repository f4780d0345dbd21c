"""Exception hierarchy shared by all modules."""


class ExpanseError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(ExpanseError, ValueError):
    pass


class PreconditionError(ExpanseError, ValueError):
    """An operation was called on input outside its contract."""


class SearchTooLarge(ExpanseError):
    """An exhaustive search was refused because the instance exceeds its limit."""


class BudgetExhausted(ExpanseError):
    """Buchberger or an enumeration ran past its configured budget."""


class InvariantViolation(ExpanseError, AssertionError):
    """A result contradicts a property that must always hold; indicates a bug."""
