"""Exception types raised by the library."""


class MonvnumError(Exception):
    pass


class RingMismatchError(MonvnumError, ValueError):
    """Operands live in different ambient rings."""


class ImproperIdealError(MonvnumError, ValueError):
    """Zero or unit ideal passed where a proper nonzero ideal is required."""


class NotAssociatedError(MonvnumError, ValueError):
    """A prime is not associated to the ideal in question."""


class SupportOverlapError(MonvnumError, ValueError):
    """Two ideals were required to have disjoint supports and do not."""


class BudgetExceededError(MonvnumError, RuntimeError):
    pass


class HypothesisError(MonvnumError, ValueError):
    """A structural theorem's hypothesis does not hold for the input."""
