"""Domain exceptions for the grid context."""

from src.shared.exceptions import DomainError


class InvalidGridError(DomainError, ValueError):
    """Raised when a grid specification is not valid."""


class GridTooLargeError(DomainError):
    """Raised when the cell count does not fit the platform index range."""

    def __init__(self, n_cells: int) -> None:
        """Initialize with the offending cell count."""
        self.n_cells = n_cells
        super().__init__(f"Grid with {n_cells} cells overflows the index range")


class InvalidCellError(DomainError, IndexError):
    """Raised when a cell index is outside the grid."""

    def __init__(self, cell: int, n_cells: int) -> None:
        """Initialize with the cell index and the grid size."""
        self.cell = cell
        self.n_cells = n_cells
        super().__init__(f"Cell {cell} is not in [0, {n_cells})")


class EmptyRetainedSetError(DomainError):
    """Raised when an SCP matrix is requested for no cells."""
