class KBranchingError(Exception):
    """Base class for errors raised by this package."""


class InstanceError(KBranchingError, ValueError):
    """Malformed input: bad vertex, arc id, vector or parameter."""


class InfeasibleError(KBranchingError):
    """The requested object does not exist for this instance."""


class BudgetExceededError(KBranchingError):
    """An enumeration engine was asked for more than its budget allows."""


class ParseError(InstanceError):
    """A file could not be parsed; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
