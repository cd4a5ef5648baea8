"""Event publisher that writes solver progress to the log."""

import dataclasses
import logging
from enum import Enum
from typing import Any, Dict, Optional
from uuid import UUID

import numpy as np
import ujson

from src.placement.domain.event_publisher.event_publisher import EventPublisher
from src.placement.domain.events.events import DomainEvent


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (UUID, str)):
        return str(value)
    if hasattr(value, "isoformat"):
        return value.isoformat()
    if isinstance(value, (int, float, bool, list, dict)) or value is None:
        return value
    return str(value)


class ConsoleEventPublisher(EventPublisher):
    """Logs each event as one line of sorted-key JSON."""

    def __init__(
        self,
        logger: Optional[logging.Logger] = None,
        level: int = logging.INFO,
    ) -> None:
        """Initialize the publisher.

        Args:
            logger: Target logger, this module's by default
            level: Level the events are logged at
        """
        self._logger = logger or logging.getLogger(__name__)
        self._level = level

    def publish(self, event: DomainEvent) -> None:
        """Log one event with its payload."""
        self._logger.log(
            self._level,
            "Solver event %s %s",
            event.event_type,
            ujson.dumps(self.payload(event), sort_keys=True),
        )

    @staticmethod
    def payload(event: DomainEvent) -> Dict[str, Any]:
        """JSON-ready view of every event field."""
        return {
            item.name: _plain(getattr(event, item.name))
            for item in dataclasses.fields(event)
        }
