"""Implementation of a TraceRepository over delimited text files."""

import io
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Tuple

import numpy as np
import pandas as pd

from src.grid.domain.model.grid import GridSpec, project_equirectangular
from src.mobility.application.dtos.trace_dtos import IngestSummaryDTO
from src.mobility.domain.exceptions.domain_exceptions import MalformedInputError
from src.mobility.domain.model.trace import RawRecord
from src.mobility.domain.model.value_objects import StudyWindow
from src.mobility.domain.repositories.trace_repository import TraceRepository
from src.shared.provenance import write_text

logger = logging.getLogger(__name__)

COLUMNS = ["user_id", "timestamp", "a", "b"]
EPOCH = pd.Timestamp("1970-01-01", tz="UTC")


def parse_timestamps(values: pd.Series) -> pd.Series:
    """Epoch seconds from epoch numbers or ISO-8601 strings; NaN when unparsable."""
    numeric = pd.to_numeric(values, errors="coerce")
    textual = numeric.isna() & values.notna()
    if textual.any():
        parsed = pd.to_datetime(
            values[textual],
            utc=True,
            errors="coerce",
            format="ISO8601",
        )
        numeric[textual] = (parsed - EPOCH) / pd.Timedelta(seconds=1)
    return np.floor(numeric)


class FileTraceRepository(TraceRepository):
    """Traces stored as ``user_id,timestamp,x_km,y_km`` lines.

    With ``coordinates="latlon"`` the last two columns are latitude and longitude,
    projected around ``reference``.
    """

    def __init__(
        self,
        path: Path,
        grid: GridSpec,
        window: StudyWindow,
        coordinates: Literal["planar", "latlon"] = "planar",
        reference: Optional[Tuple[float, float]] = None,
        max_error_ratio: float = 0.01,
    ) -> None:
        """Initialize repository with the trace file and its study frame.

        Args:
            path: Trace file
            grid: Grid records are resolved to
            window: Study window records must fall into
            coordinates: Coordinate convention of the file
            reference: (lat, lon) projection reference for geographic input
            max_error_ratio: Highest tolerated share of rejected lines
        """
        if coordinates == "latlon" and reference is None:
            raise ValueError("Geographic input needs a projection reference")
        self._path = Path(path)
        self._grid = grid
        self._window = window
        self._coordinates = coordinates
        self._reference = reference
        self._max_error_ratio = max_error_ratio

    def _data_lines(self) -> io.StringIO:
        # Only whole lines starting with "#" are comments; ids may contain "#".
        with self._path.open("r", encoding="utf-8") as handle:
            kept = [line for line in handle if not line.lstrip().startswith("#")]
        return io.StringIO("".join(kept))

    def _read_frame(self) -> Tuple[pd.DataFrame, int]:
        bad_lines = 0

        def count_bad_line(_fields: List[str]) -> None:
            nonlocal bad_lines
            bad_lines += 1

        try:
            frame = pd.read_csv(
                self._data_lines(),
                header=None,
                names=COLUMNS,
                dtype=str,
                skip_blank_lines=True,
                skipinitialspace=True,
                engine="python",
                on_bad_lines=count_bad_line,
            )
        except pd.errors.EmptyDataError:
            frame = pd.DataFrame(columns=COLUMNS, dtype=str)
        return frame, bad_lines

    def read_records(self) -> Tuple[Dict[str, List[RawRecord]], IngestSummaryDTO]:
        """
        Read all records grouped per user.

        Returns:
            Records per user sorted by timestamp, and the ingest line accounting

        Raises:
            MalformedInputError: If the rejected share exceeds the allowed ratio
        """
        frame, bad_lines = self._read_frame()
        total = len(frame) + bad_lines

        timestamps = parse_timestamps(frame["timestamp"])
        first = pd.to_numeric(frame["a"], errors="coerce")
        second = pd.to_numeric(frame["b"], errors="coerce")
        users = frame["user_id"].str.strip()
        valid = (
            users.notna()
            & (users != "")
            & timestamps.notna()
            & np.isfinite(first)
            & np.isfinite(second)
        )
        malformed = bad_lines + int((~valid).sum())

        frame = pd.DataFrame(
            {
                "user_id": users[valid],
                "timestamp": timestamps[valid].astype(np.int64),
                "a": first[valid].astype(float),
                "b": second[valid].astype(float),
            },
        )

        in_window = (frame["timestamp"] >= self._window.start) & (
            frame["timestamp"] < self._window.end
        )
        outside_window = int((~in_window).sum())
        frame = frame[in_window]

        if self._coordinates == "latlon":
            ref_lat, ref_lon = self._reference or (0.0, 0.0)
            xs, ys = project_equirectangular(
                frame["a"].to_numpy(),
                frame["b"].to_numpy(),
                ref_lat,
                ref_lon,
            )
        else:
            xs, ys = frame["a"].to_numpy(), frame["b"].to_numpy()
        cells = self._grid.cells_of(xs, ys)
        inside = cells >= 0
        outside_grid = int((~inside).sum())
        frame = frame.assign(cell=cells)[inside]

        summary = IngestSummaryDTO(
            total_lines=total,
            malformed=malformed,
            outside_window=outside_window,
            outside_grid=outside_grid,
            users=int(frame["user_id"].nunique()),
        )
        if summary.rejected:
            logger.warning(
                "Rejected %d of %d trace lines "
                "(%d malformed, %d outside window, %d outside grid)",
                summary.rejected,
                total,
                malformed,
                outside_window,
                outside_grid,
            )
        if summary.rejected_ratio > self._max_error_ratio:
            raise MalformedInputError(summary.rejected, total, self._max_error_ratio)

        # Stable sort keeps file order among equal timestamps.
        frame = frame.sort_values(["user_id", "timestamp"], kind="mergesort")
        per_user: Dict[str, List[RawRecord]] = {}
        for user_id, group in frame.groupby("user_id", sort=True):
            per_user[str(user_id)] = [
                RawRecord(user_id=str(user_id), timestamp=int(ts), cell=int(cell))
                for ts, cell in zip(group["timestamp"], group["cell"])
            ]
        return per_user, summary

    def write_records(
        self,
        records: Iterable[RawRecord],
        header: Mapping[str, str],
    ) -> int:
        """
        Write records at their cell centers, in input order.

        Args:
            records: Records to write
            header: Provenance header entries

        Returns:
            Number of records written
        """
        rows = []
        for record in records:
            x_km, y_km = self._grid.center(record.cell)
            rows.append((record.user_id, record.timestamp, x_km, y_km))
        frame = pd.DataFrame(rows, columns=COLUMNS)
        buffer = io.StringIO()
        frame.to_csv(
            buffer,
            header=False,
            index=False,
            float_format="%.4f",
            lineterminator="\n",
        )
        write_text(self._path, header, buffer.getvalue())
        return len(rows)
