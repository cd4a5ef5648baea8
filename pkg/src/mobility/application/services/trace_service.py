"""Trace pipeline: record reduction, home detection and arrival counting."""

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.grid.domain.model.grid import CellId, GridSpec
from src.mobility.application.dtos.trace_dtos import HomeDTO, IngestSummaryDTO
from src.mobility.domain.exceptions.domain_exceptions import (
    EmptyTracesError,
    UnsortedRecordsError,
)
from src.mobility.domain.model.demand import DemandMatrix, SlotKey
from src.mobility.domain.model.trace import RawRecord, StayTuple, TraceLog
from src.mobility.domain.model.value_objects import (
    NightWindow,
    PipelineParams,
    StudyWindow,
)
from src.mobility.domain.repositories.demand_repository import DemandRepository
from src.mobility.domain.repositories.trace_repository import TraceRepository

logger = logging.getLogger(__name__)


def reduce_records(records: Sequence[RawRecord]) -> List[StayTuple]:
    """Collapse maximal runs of same-cell records into stays.

    Args:
        records: Records of one user sorted by timestamp

    Returns:
        Stays spanning the first and last timestamp of each run

    Raises:
        UnsortedRecordsError: If the records are not sorted by timestamp
    """
    stays: List[StayTuple] = []
    if not records:
        return stays
    cell = records[0].cell
    first = last = records[0].timestamp
    for record in records[1:]:
        if record.timestamp < last:
            raise UnsortedRecordsError(record.user_id)
        if record.cell == cell:
            last = record.timestamp
            continue
        stays.append(StayTuple(cell=cell, t_start=first, t_end=last))
        cell = record.cell
        first = last = record.timestamp
    stays.append(StayTuple(cell=cell, t_start=first, t_end=last))
    return stays


def detect_home(
    stays: Sequence[StayTuple],
    window: Optional[NightWindow] = None,
    utc_offset: int = 0,
    period: Optional[Tuple[int, int]] = None,
) -> Optional[CellId]:
    """Cell where the user cumulatively spends most nightly time.

    Args:
        stays: Reduced stays of one user
        window: Nightly hours, 20:00-06:00 local time by default
        utc_offset: Local time offset from UTC in seconds
        period: Optional epoch range the stays are clipped to

    Returns:
        The home cell, or None when no stay intersects the nightly hours
    """
    window = window or NightWindow()
    nightly: Dict[CellId, int] = defaultdict(int)
    for stay in stays:
        t_start, t_end = stay.t_start, stay.t_end
        if period is not None:
            t_start, t_end = max(t_start, period[0]), min(t_end, period[1])
        seconds = window.overlap(t_start, t_end, utc_offset)
        if seconds > 0:
            nightly[stay.cell] += seconds
    if not nightly:
        return None
    # Ties go to the lower cell index.
    return min(nightly, key=lambda cell: (-nightly[cell], cell))


def build_trace(
    user_id: str,
    records: Sequence[RawRecord],
    params: PipelineParams,
) -> TraceLog:
    """Reduce a user's records and annotate the detected home."""
    stays = reduce_records(records)
    home = detect_home(stays, params.night, params.utc_offset, params.home_period)
    return TraceLog(user_id=user_id, stays=tuple(stays), home=home)


def count_arrivals(
    trace: TraceLog,
    grid: GridSpec,
    tau_min: int,
    l_min: float,
    window: StudyWindow,
) -> Counter:
    """Count qualifying long-trip arrivals of one user.

    Walks the stays accumulating Manhattan distance between consecutive cells.
    Every stay of at least ``tau_min`` seconds is a charging opportunity and
    resets the accumulator; it is counted in the slot of its start only when it
    is not at home and the accumulated distance reached ``l_min``.

    Args:
        trace: Reduced, home-annotated trace
        grid: Grid the cells belong to
        tau_min: Minimum stay (s) that allows a full charge
        l_min: Minimum trip length (km) that requires a charge
        window: Study window defining the slots

    Returns:
        Counter of (cell, slot) contributions
    """
    counts: Counter = Counter()
    travelled = 0.0
    previous: Optional[StayTuple] = None
    for stay in trace.stays:
        if previous is not None:
            travelled += grid.manhattan_km(previous.cell, stay.cell)
        if stay.duration >= tau_min:
            if stay.cell != trace.home and travelled >= l_min:
                counts[(stay.cell, window.slot_of(stay.t_start))] += 1
            travelled = 0.0
        previous = stay
    return counts


def _count_chunk(
    chunk: Sequence[TraceLog],
    grid: GridSpec,
    params: PipelineParams,
) -> Counter:
    total: Counter = Counter()
    for trace in chunk:
        if params.exclude_homeless and trace.home is None:
            continue
        total.update(
            count_arrivals(trace, grid, params.tau_min, params.l_min, params.window),
        )
    return total


def _chunks(items: Sequence[TraceLog], n: int) -> List[Sequence[TraceLog]]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def merge_counts(parts: Iterable[Mapping[SlotKey, int]]) -> Dict[SlotKey, int]:
    """Associative, commutative merge of per-worker contributions."""
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return dict(total)


def build_demand(
    traces: Iterable[TraceLog],
    grid: GridSpec,
    params: PipelineParams,
    jobs: int = 1,
) -> DemandMatrix:
    """Sum per-user arrival counts into a demand matrix.

    Args:
        traces: All users' traces
        grid: Grid the cells belong to
        params: Pipeline thresholds and study window
        jobs: Worker processes; 1 runs in-process

    Returns:
        The demand matrix, independent of the order of ``traces``
    """
    traces = list(traces)
    if jobs > 1 and len(traces) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(
                    _count_chunk,
                    _chunks(traces, jobs),
                    [grid] * jobs,
                    [params] * jobs,
                ),
            )
    else:
        parts = [_count_chunk(traces, grid, params)]
    return DemandMatrix(
        n_cells=grid.n_cells,
        n_slots=params.window.n_slots,
        slot_duration=params.window.slot_duration,
        window_start=params.window.start,
        counts=merge_counts(parts),
    )


class TracePipelineService:
    """Runs ingest, reduction, home detection and demand counting."""

    def __init__(
        self,
        trace_repository: TraceRepository,
        grid: GridSpec,
        params: PipelineParams,
        jobs: int = 1,
    ) -> None:
        """
        Initialize the service.

        Args:
            trace_repository: Source of raw records
            grid: Study grid
            params: Pipeline parameters
            jobs: Worker processes for demand counting
        """
        self._trace_repository = trace_repository
        self._grid = grid
        self._params = params
        self._jobs = jobs

    def load_traces(self) -> Tuple[List[TraceLog], IngestSummaryDTO]:
        """Ingest records and build one trace per user, sorted by user id."""
        per_user, summary = self._trace_repository.read_records()
        traces = [
            build_trace(user_id, records, self._params)
            for user_id, records in sorted(per_user.items())
        ]
        homeless = sum(1 for trace in traces if trace.home is None)
        if homeless:
            logger.warning(
                "%d of %d users have no detectable home%s",
                homeless,
                len(traces),
                " and are excluded" if self._params.exclude_homeless else "",
            )
        logger.info(
            "Ingested %d records of %d users (%d lines rejected)",
            sum(len(records) for records in per_user.values()),
            len(traces),
            summary.rejected,
        )
        return traces, summary

    def demand_for(
        self,
        traces: Sequence[TraceLog],
        params: Optional[PipelineParams] = None,
    ) -> DemandMatrix:
        """Demand matrix of already loaded traces."""
        return build_demand(traces, self._grid, params or self._params, self._jobs)

    def run(
        self,
        demand_repository: DemandRepository,
        header: Mapping[str, str],
    ) -> DemandMatrix:
        """Ingest, count and persist the demand matrix and detected homes."""
        traces, _summary = self.load_traces()
        if not traces:
            raise EmptyTracesError()
        demand = self.demand_for(traces)
        demand_repository.save(demand, header)
        demand_repository.save_homes(
            [HomeDTO(user_id=trace.user_id, home_cell=trace.home) for trace in traces],
            header,
        )
        logger.info(
            "Counted %d arrivals in %d cells",
            demand.total,
            len(demand.demand_cells()),
        )
        return demand
