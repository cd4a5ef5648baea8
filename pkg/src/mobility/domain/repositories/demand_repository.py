"""Demand and ledger repository interfaces."""

from abc import ABC, abstractmethod
from typing import Iterable, Mapping

from src.mobility.application.dtos.trace_dtos import GroundTruthLedgerDTO, HomeDTO
from src.mobility.domain.model.demand import DemandMatrix


class DemandRepository(ABC):
    """Persistence of demand matrices."""

    @abstractmethod
    def save(self, demand: DemandMatrix, header: Mapping[str, str]) -> None:
        """
        Persist a demand matrix.

        Args:
            demand: Matrix to persist
            header: Provenance header entries
        """

    @abstractmethod
    def load(self) -> DemandMatrix:
        """
        Load a demand matrix.

        Returns:
            The persisted matrix
        """

    @abstractmethod
    def save_homes(self, homes: Iterable[HomeDTO], header: Mapping[str, str]) -> None:
        """
        Persist detected homes next to the matrix.

        Args:
            homes: One entry per user
            header: Provenance header entries
        """


class LedgerRepository(ABC):
    """Persistence of the synthetic ground-truth ledger."""

    @abstractmethod
    def save(self, ledger: GroundTruthLedgerDTO, provenance: Mapping[str, str]) -> None:
        """
        Persist the ledger.

        Args:
            ledger: Planted homes and trips
            provenance: Provenance entries embedded in the file
        """

    @abstractmethod
    def load(self) -> GroundTruthLedgerDTO:
        """
        Load the ledger.

        Returns:
            The persisted ledger
        """
