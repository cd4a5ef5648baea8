"""Trace repository interface."""

from abc import ABC, abstractmethod
from typing import Dict, Iterable, List, Mapping, Tuple

from src.mobility.application.dtos.trace_dtos import IngestSummaryDTO
from src.mobility.domain.model.trace import RawRecord


class TraceRepository(ABC):
    """Source and sink of raw location records."""

    @abstractmethod
    def read_records(self) -> Tuple[Dict[str, List[RawRecord]], IngestSummaryDTO]:
        """
        Read all records grouped per user.

        Returns:
            Records per user sorted by timestamp, and the ingest line accounting
        """

    @abstractmethod
    def write_records(
        self,
        records: Iterable[RawRecord],
        header: Mapping[str, str],
    ) -> int:
        """
        Write records in ingest format.

        Args:
            records: Records to write, already in output order
            header: Provenance header entries

        Returns:
            Number of records written
        """
