"""Domain events for the placement domain."""

from dataclasses import dataclass, field
from datetime import datetime, timezone
from uuid import UUID


@dataclass(frozen=True)
class DomainEvent:
    """Base class for all domain events."""

    event_id: UUID
    event_type: str
    aggregate_id: UUID
    occurred_on: datetime = field(default_factory=lambda: datetime.now(timezone.utc))


@dataclass(frozen=True)
class PopulationSeededEvent(DomainEvent):
    """Event raised when the initial GA population is complete."""

    size: int = 0
    requested: int = 0
    best_objective: float = 0.0
    mean_objective: float = 0.0


@dataclass(frozen=True)
class BestLayoutImprovedEvent(DomainEvent):
    """Event raised when an accepted child beats the best member."""

    accepted: int = 0
    best_objective: float = 0.0
    station_count: int = 0


@dataclass(frozen=True)
class EvolutionStalledEvent(DomainEvent):
    """Event raised when too many consecutive children were duplicates."""

    accepted: int = 0
    rejected_in_a_row: int = 0


@dataclass(frozen=True)
class EvolutionCompletedEvent(DomainEvent):
    """Event raised when a GA run ends."""

    accepted: int = 0
    rejected: int = 0
    best_objective: float = 0.0
    mean_objective: float = 0.0

    def __post_init__(self) -> None:
        """Validate the event after initialization."""
        if self.accepted < 0 or self.rejected < 0:
            raise ValueError("child counters cannot be negative")
