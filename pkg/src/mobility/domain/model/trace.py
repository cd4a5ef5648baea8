"""Trace entities: raw location records, stays and per-user trace logs."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from src.grid.domain.model.grid import CellId


@dataclass(frozen=True)
class RawRecord:
    """A single phone-usage event resolved to a grid cell."""

    user_id: str
    timestamp: int
    cell: CellId


@dataclass(frozen=True)
class StayTuple:
    """A maximal run of same-cell records: (cell, t_start, t_end)."""

    cell: CellId
    t_start: int
    t_end: int

    def __post_init__(self) -> None:
        """Validate the stay bounds."""
        if self.t_end < self.t_start:
            raise ValueError("Stay must not end before it starts")

    @property
    def duration(self) -> int:
        """Stay duration in seconds."""
        return self.t_end - self.t_start


@dataclass(frozen=True)
class TraceLog:
    """Reduced location history of one user."""

    user_id: str
    stays: Tuple[StayTuple, ...] = field(default_factory=tuple)
    home: Optional[CellId] = None

    def __post_init__(self) -> None:
        """Validate stay ordering."""
        for previous, current in zip(self.stays, self.stays[1:]):
            if current.t_start < previous.t_start:
                raise ValueError(f"Stays of user {self.user_id!r} are not sorted")
