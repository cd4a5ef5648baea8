"""Implementation of a LayoutRepository over text files."""

from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from src.mobility.infrastructure.repositories.filesystem.demand_repository import (
    frame_text,
)
from src.placement.application.dtos.placement_dtos import PlacedLayoutDTO
from src.placement.domain.repositories.layout_repository import LayoutRepository
from src.shared.provenance import read_header, write_text


class FileLayoutRepository(LayoutRepository):
    """Layout as ``layout.txt``, one station cell per line after the header."""

    def __init__(self, path: Path, weights_path: Optional[Path] = None) -> None:
        """Initialize repository with the layout file.

        Args:
            path: Layout file
            weights_path: Weight file, next to the layout by default
        """
        self._path = Path(path)
        self._weights_path = weights_path or self._path.with_name("weights.csv")

    def save(self, layout: PlacedLayoutDTO, header: Mapping[str, str]) -> None:
        """
        Persist the sorted station cells.

        Args:
            layout: Layout to persist
            header: Provenance header entries
        """
        entries = dict(header)
        entries.update(
            h=str(layout.h),
            delta=repr(layout.delta),
            w0=repr(layout.w0),
            objective=repr(layout.objective),
            station_count=str(layout.station_count),
        )
        body = "".join(f"{cell}\n" for cell in sorted(layout.stations))
        write_text(self._path, entries, body)

    def load(self) -> PlacedLayoutDTO:
        """
        Load a layout and its parameters from the header.

        Returns:
            The persisted layout

        Raises:
            ValueError: If the header lacks the parameters or a line is not a cell id
        """
        header = read_header(self._path)
        with self._path.open("r", encoding="utf-8") as handle:
            lines = [line.strip() for line in handle if not line.startswith("#")]
        try:
            stations = [int(line) for line in lines if line]
            return PlacedLayoutDTO(
                stations=sorted(stations),
                h=int(header["h"]),
                delta=float(header["delta"]),
                w0=float(header.get("w0", "0")),
                objective=float(header.get("objective", "0")),
            )
        except KeyError as exc:
            raise ValueError(
                f"{self._path} lacks the layout entry {exc.args[0]!r}",
            ) from exc

    def save_weights(
        self,
        cells: Sequence[int],
        weights: np.ndarray,
        header: Mapping[str, str],
    ) -> None:
        """
        Persist ``cell_index,weight`` rows sorted by cell.

        Args:
            cells: Full-grid cell ids
            weights: Weight per cell
            header: Provenance header entries
        """
        frame = pd.DataFrame({"cell_index": list(cells), "weight": weights})
        frame = frame.sort_values("cell_index", kind="mergesort")
        write_text(self._weights_path, header, frame_text(frame))
