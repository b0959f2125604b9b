"""Exception types raised across the package."""


class GraphFormatError(ValueError):
    """Malformed graph or colouring text."""


class DisconnectedGraphError(ValueError):
    """Raised where a connected underlying graph is required."""

    def __init__(self, unreached):
        self.unreached = frozenset(unreached)
        super().__init__(
            "graph is disconnected; unreached vertices: %s" % sorted(self.unreached)
        )


class SizeLimitError(ValueError):
    """Input exceeds a desk-scale limit of an exhaustive routine."""


class SearchBudgetExceeded(RuntimeError):
    """A backtracking search hit its node budget before finishing.

    ``partial`` carries whatever the search had established so far.
    """

    def __init__(self, message, budget, partial=None):
        super().__init__(message)
        self.budget = budget
        self.partial = partial


class ConstructionError(RuntimeError):
    """A constructor could not produce a colouring within its budget."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])
