"""Exception hierarchy shared by every module."""

from __future__ import annotations


class StreamGraphError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(StreamGraphError, ValueError):
    """Malformed graph input: self-loops, duplicate edges, bad ids or bad file syntax."""


class ModelMismatchError(StreamGraphError):
    """An algorithm received a stream in a model it cannot process."""

    def __init__(self, algorithm: str, expected, got):
        self.algorithm = algorithm
        self.expected = expected
        self.got = got
        super().__init__(f"{algorithm} accepts {expected} streams only, got {got}")


class BudgetExceededError(StreamGraphError):
    """A pass or memory budget was surpassed."""

    def __init__(self, algorithm: str, resource: str, formula: str, budget, attempted):
        self.algorithm = algorithm
        self.resource = resource
        self.formula = formula
        self.budget = budget
        self.attempted = attempted
        super().__init__(
            f"{algorithm}: {resource} budget {budget} ({formula}) exceeded, attempted {attempted}"
        )


class CoverViolationError(StreamGraphError):
    """An edge avoids the supplied vertex cover."""


class PartitionError(StreamGraphError):
    """G - X is not a disjoint union of cliques, or has more cliques than declared."""


class GadgetInputError(StreamGraphError, ValueError):
    """Invalid Disjointness/Permutation input for a gadget kind."""


class MatchingOverflowError(StreamGraphError):
    """A matching grew past its declared bound (for kernelization: the answer is NO)."""

    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"matching exceeds the bound {bound}")
