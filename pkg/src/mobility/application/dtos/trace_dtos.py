"""DTOs for the mobility context."""

from collections import Counter
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class IngestSummaryDTO(BaseModel):
    """Line accounting of a trace ingest."""

    total_lines: int = 0
    malformed: int = 0
    outside_window: int = 0
    outside_grid: int = 0
    users: int = 0

    @property
    def rejected(self) -> int:
        """Lines that did not produce a record."""
        return self.malformed + self.outside_window + self.outside_grid

    @property
    def rejected_ratio(self) -> float:
        """Share of rejected lines; 0 for an empty file."""
        return self.rejected / self.total_lines if self.total_lines else 0.0


class HomeLedgerDTO(BaseModel):
    """Planted home cell of a synthetic user."""

    user_id: str
    home_cell: int


class TripLedgerDTO(BaseModel):
    """Planted qualifying long trip of a synthetic user."""

    user_id: str
    arrival_cell: int
    arrival_slot: int
    trip_km: float = Field(..., ge=0)
    charge_left: float = Field(0.0, ge=0, le=1)


class GroundTruthLedgerDTO(BaseModel):
    """Ground truth emitted by the synthetic trace generator."""

    homes: List[HomeLedgerDTO] = Field(default_factory=list)
    trips: List[TripLedgerDTO] = Field(default_factory=list)

    def home_of(self) -> Dict[str, int]:
        """Planted home cell per user."""
        return {entry.user_id: entry.home_cell for entry in self.homes}

    def arrival_counts(self) -> Dict[Tuple[int, int], int]:
        """Planted arrivals aggregated per (cell, slot)."""
        return dict(
            Counter((trip.arrival_cell, trip.arrival_slot) for trip in self.trips),
        )


class HomeDTO(BaseModel):
    """Detected home of a user, absent when no nightly stay was observed."""

    user_id: str
    home_cell: Optional[int] = None
