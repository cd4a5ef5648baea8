"""Domain exceptions for the placement context."""

from src.shared.exceptions import DomainError


class InvalidParameterError(DomainError, ValueError):
    """Raised when a model or solver parameter is out of range."""


class EmptyProblemError(DomainError):
    """Raised when no cell has demand, so there is nothing to cover."""

    def __init__(self) -> None:
        """Initialize with the fixed diagnostic."""
        super().__init__("empty problem")


class DimensionMismatchError(DomainError, ValueError):
    """Raised when a layout does not match the problem's column count."""

    def __init__(self, expected: int, actual: int) -> None:
        """Initialize with the expected and actual lengths."""
        self.expected = expected
        self.actual = actual
        super().__init__(f"Layout has {actual} entries, problem has {expected} columns")


class InfeasibleInstanceError(DomainError):
    """Raised when some cell can never be covered as often as required."""

    def __init__(self, row: int, available: int, required: int) -> None:
        """Initialize with the offending row and its coverage numbers."""
        self.row = row
        self.available = available
        self.required = required
        super().__init__(
            f"Row {row} has {available} covering columns but requires {required}",
        )


class InfeasibleLayoutError(DomainError):
    """Raised when an operation needs a feasible layout and gets another one."""


class InstanceTooLargeError(DomainError):
    """Raised when the exact solver is asked to enumerate too many columns."""

    def __init__(self, n_cols: int, limit: int) -> None:
        """Initialize with the column count and the enumeration limit."""
        self.n_cols = n_cols
        self.limit = limit
        super().__init__(
            f"Exact solving is limited to {limit} columns, instance has {n_cols}",
        )


class PopulationTooSmallError(DomainError):
    """Raised when an operator needs more population members than available."""

    def __init__(self, size: int, needed: int) -> None:
        """Initialize with the population size and the required minimum."""
        self.size = size
        self.needed = needed
        super().__init__(f"Population of {size} members, at least {needed} needed")
