"""Layout and metrics repository interfaces."""

from abc import ABC, abstractmethod
from typing import Mapping, Sequence

import numpy as np
from pydantic import BaseModel

from src.placement.application.dtos.placement_dtos import PlacedLayoutDTO


class LayoutRepository(ABC):
    """Persistence of solved layouts."""

    @abstractmethod
    def save(self, layout: PlacedLayoutDTO, header: Mapping[str, str]) -> None:
        """
        Persist a layout.

        Args:
            layout: Stations in full-grid cell ids
            header: Provenance header entries
        """

    @abstractmethod
    def load(self) -> PlacedLayoutDTO:
        """
        Load a layout.

        Returns:
            The persisted layout
        """

    @abstractmethod
    def save_weights(
        self,
        cells: Sequence[int],
        weights: np.ndarray,
        header: Mapping[str, str],
    ) -> None:
        """
        Persist the weight of every candidate cell.

        Args:
            cells: Full-grid cell ids
            weights: Weight per cell, offset included
            header: Provenance header entries
        """


class MetricsRepository(ABC):
    """Persistence of metric tables and summary documents."""

    @abstractmethod
    def save_table(
        self,
        name: str,
        rows: Sequence[BaseModel],
        header: Mapping[str, str],
    ) -> None:
        """
        Persist rows as ``<name>.csv`` and ``<name>.jsonl``.

        Args:
            name: Artifact stem
            rows: One model per row, all of the same type
            header: Provenance header entries
        """

    @abstractmethod
    def save_document(
        self,
        name: str,
        document: BaseModel,
        provenance: Mapping[str, str],
    ) -> None:
        """
        Persist a single model as ``<name>.json``.

        Args:
            name: Artifact stem
            document: Model to persist
            provenance: Provenance entries embedded in the file
        """
