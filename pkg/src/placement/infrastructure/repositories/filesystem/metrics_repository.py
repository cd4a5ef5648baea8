"""Implementation of a MetricsRepository as CSV, JSON-lines and JSON files."""

from pathlib import Path
from typing import Mapping, Sequence

import pandas as pd
import ujson
from pydantic import BaseModel

from src.mobility.infrastructure.repositories.filesystem.demand_repository import (
    frame_text,
)
from src.placement.domain.repositories.layout_repository import MetricsRepository
from src.shared.provenance import write_text


class FileMetricsRepository(MetricsRepository):
    """Metric artifacts under one output directory."""

    def __init__(self, directory: Path) -> None:
        """Initialize repository with the output directory.

        Args:
            directory: Directory receiving the artifacts
        """
        self._directory = Path(directory)

    def save_table(
        self,
        name: str,
        rows: Sequence[BaseModel],
        header: Mapping[str, str],
    ) -> None:
        """
        Persist ``<name>.csv`` and ``<name>.jsonl``.

        The JSON-lines file starts with a ``{"provenance": ...}`` record.

        Args:
            name: Artifact stem
            rows: One model per row
            header: Provenance header entries
        """
        records = [row.model_dump() for row in rows]
        frame = pd.DataFrame.from_records(records)
        write_text(self._directory / f"{name}.csv", header, frame_text(frame))

        lines = [ujson.dumps({"provenance": dict(header)}, sort_keys=True)]
        lines.extend(ujson.dumps(record, sort_keys=True) for record in records)
        write_text(self._directory / f"{name}.jsonl", {}, "\n".join(lines) + "\n")

    def save_document(
        self,
        name: str,
        document: BaseModel,
        provenance: Mapping[str, str],
    ) -> None:
        """
        Persist ``<name>.json`` with an embedded provenance object.

        Args:
            name: Artifact stem
            document: Model to persist
            provenance: Provenance entries
        """
        content = {"provenance": dict(provenance), **document.model_dump()}
        write_text(
            self._directory / f"{name}.json",
            {},
            ujson.dumps(content, indent=2, sort_keys=True) + "\n",
        )
