"""Port through which solvers report their progress."""

from abc import ABC, abstractmethod

from src.placement.domain.events.events import DomainEvent


class EventPublisher(ABC):
    """Receiver of solver progress events."""

    @abstractmethod
    def publish(self, event: DomainEvent) -> None:
        """Publish one event."""
