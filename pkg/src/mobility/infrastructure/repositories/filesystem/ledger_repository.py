"""Implementation of a LedgerRepository as a JSON document."""

from pathlib import Path
from typing import Mapping

import ujson

from src.mobility.application.dtos.trace_dtos import GroundTruthLedgerDTO
from src.mobility.domain.repositories.demand_repository import LedgerRepository


class FileLedgerRepository(LedgerRepository):
    """Ground-truth ledger stored as ``ledger.json``."""

    def __init__(self, path: Path) -> None:
        """Initialize repository with the ledger file.

        Args:
            path: Ledger file
        """
        self._path = Path(path)

    def save(self, ledger: GroundTruthLedgerDTO, provenance: Mapping[str, str]) -> None:
        """
        Persist the ledger with an embedded provenance object.

        Args:
            ledger: Planted homes and trips
            provenance: Provenance entries
        """
        document = {"provenance": dict(provenance), **ledger.model_dump()}
        self._path.parent.mkdir(parents=True, exist_ok=True)
        with self._path.open("w", encoding="utf-8", newline="\n") as handle:
            handle.write(ujson.dumps(document, indent=2, sort_keys=True))
            handle.write("\n")

    def load(self) -> GroundTruthLedgerDTO:
        """
        Load the ledger, ignoring its provenance object.

        Returns:
            The persisted ledger
        """
        with self._path.open("r", encoding="utf-8") as handle:
            document = ujson.load(handle)
        document.pop("provenance", None)
        return GroundTruthLedgerDTO.model_validate(document)
