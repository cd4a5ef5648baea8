"""Implementation of a DemandRepository over delimited text files."""

import io
from pathlib import Path
from typing import Iterable, Mapping, Optional

import pandas as pd

from src.mobility.application.dtos.trace_dtos import HomeDTO
from src.mobility.domain.model.demand import DemandMatrix
from src.mobility.domain.repositories.demand_repository import DemandRepository
from src.shared.provenance import read_header, write_text

DEMAND_COLUMNS = ["cell_index", "slot_index", "count"]


def frame_text(frame: pd.DataFrame) -> str:
    """Deterministic CSV rendering with a header row and ``\\n`` line ends."""
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


class FileDemandRepository(DemandRepository):
    """Demand matrix as ``demand.csv`` and detected homes as ``homes.csv``."""

    def __init__(self, path: Path, homes_path: Optional[Path] = None) -> None:
        """Initialize repository with the matrix file.

        Args:
            path: Demand matrix file
            homes_path: Home file, next to the matrix by default
        """
        self._path = Path(path)
        self._homes_path = homes_path or self._path.with_name("homes.csv")

    def save(self, demand: DemandMatrix, header: Mapping[str, str]) -> None:
        """
        Persist the matrix sorted by cell then slot.

        Args:
            demand: Matrix to persist
            header: Provenance header entries
        """
        frame = pd.DataFrame(list(demand.sorted_items()), columns=DEMAND_COLUMNS)
        entries = dict(header)
        entries.update(
            n_cells=str(demand.n_cells),
            n_slots=str(demand.n_slots),
            slot_s=str(demand.slot_duration),
            window_start=str(demand.window_start),
        )
        write_text(self._path, entries, frame_text(frame))

    def load(self) -> DemandMatrix:
        """
        Load the matrix; its shape comes from the header.

        Returns:
            The persisted matrix

        Raises:
            ValueError: If the shape entries are missing from the header
        """
        header = read_header(self._path)
        try:
            n_cells = int(header["n_cells"])
            n_slots = int(header["n_slots"])
            slot_duration = int(header["slot_s"])
        except KeyError as exc:
            raise ValueError(
                f"{self._path} lacks the demand shape entry {exc.args[0]!r}",
            ) from exc
        frame = pd.read_csv(self._path, comment="#", dtype="int64")
        counts = {
            (int(cell), int(slot)): int(count)
            for cell, slot, count in frame[DEMAND_COLUMNS].itertuples(index=False)
        }
        return DemandMatrix(
            n_cells=n_cells,
            n_slots=n_slots,
            slot_duration=slot_duration,
            window_start=int(header.get("window_start", "0")),
            counts=counts,
        )

    def save_homes(self, homes: Iterable[HomeDTO], header: Mapping[str, str]) -> None:
        """
        Persist detected homes; an absent home is an empty field.

        Args:
            homes: One entry per user
            header: Provenance header entries
        """
        frame = pd.DataFrame(
            [(home.user_id, home.home_cell) for home in homes],
            columns=["user_id", "home_cell"],
        ).astype({"home_cell": "Int64"})
        write_text(self._homes_path, header, frame_text(frame))
