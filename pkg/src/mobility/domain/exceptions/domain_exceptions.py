"""Domain exceptions for the mobility context."""

from src.shared.exceptions import DomainError


class UnsortedRecordsError(DomainError, ValueError):
    """Raised when a user's records are not sorted by timestamp."""

    def __init__(self, user_id: str) -> None:
        """Initialize with the offending user."""
        self.user_id = user_id
        super().__init__(f"Records of user {user_id!r} are not sorted by timestamp")


class MalformedInputError(DomainError):
    """Raised when too many ingest lines are rejected."""

    def __init__(self, rejected: int, total: int, max_ratio: float) -> None:
        """Initialize with the rejected and total line counts."""
        self.rejected = rejected
        self.total = total
        self.max_ratio = max_ratio
        super().__init__(
            f"{rejected} of {total} trace lines rejected, "
            f"above the allowed ratio {max_ratio:g}",
        )


class SynthConfigError(DomainError, ValueError):
    """Raised when a synthetic trace configuration cannot be honoured."""


class EmptyTracesError(DomainError):
    """Raised when an ingest yields no usable record."""

    def __init__(self) -> None:
        """Initialize with the fixed message."""
        super().__init__("empty problem: no usable trace records")
