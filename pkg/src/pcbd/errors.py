"""Exception hierarchy shared by every module.

Each error carries the CLI exit status it maps to, so the command-line layer
never needs its own translation table.
"""

from __future__ import annotations


class DesignError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class ParameterError(DesignError):
    """A parameter is malformed or outside its admissible range."""


class ClassError(DesignError):
    """Congruence or divisibility precondition of a construction failed."""


class ShapeError(DesignError):
    """Matrix dimensions are incompatible."""


class IndexSelectionError(DesignError):
    """Column selection contains duplicates or out-of-range indices."""


class CodingError(DesignError):
    """An attribute level outside {1, 2} was supplied."""


class AmbiguityError(DesignError):
    """A difference entry of 0 has no canonical level pair."""


class LayoutError(DesignError):
    """A block layout does not partition the rows or cuts an existing block."""


class VerificationError(DesignError):
    """A matrix expected to be Hadamard failed H H^T = nI."""


class SingularityError(DesignError):
    """The information matrix is singular where an inverse is needed."""


class UnsupportedOrderError(DesignError):
    """No Hadamard matrix of the requested order is available."""

    exit_code = 3

    def __init__(self, order: int, available: list[int] | None = None):
        self.order = order
        self.available = sorted(available or [])
        msg = f"no Hadamard matrix of order {order} is available"
        if self.available:
            msg += f"; registry orders: {', '.join(map(str, self.available))}"
        super().__init__(msg)


class BudgetExceeded(DesignError):
    """Exhaustive enumeration would exceed the configured candidate budget."""

    exit_code = 4

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"exhaustive search needs {required} candidates after symmetry "
            f"reduction, budget is {budget}"
        )
