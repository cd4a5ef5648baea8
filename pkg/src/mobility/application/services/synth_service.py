"""Synthetic mobility traces with a planted ground-truth ledger."""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Mapping, Tuple

import numpy as np

from src.grid.domain.model.grid import CellId, GridSpec
from src.mobility.application.dtos.synth_dtos import SynthConfig
from src.mobility.application.dtos.trace_dtos import (
    GroundTruthLedgerDTO,
    HomeLedgerDTO,
    TripLedgerDTO,
)
from src.mobility.domain.exceptions.domain_exceptions import SynthConfigError
from src.mobility.domain.model.battery import BatteryParams, battery_level
from src.mobility.domain.model.trace import RawRecord
from src.mobility.domain.model.value_objects import (
    SECONDS_PER_DAY,
    SECONDS_PER_HOUR,
    StudyWindow,
)
from src.mobility.domain.repositories.demand_repository import LedgerRepository
from src.mobility.domain.repositories.trace_repository import TraceRepository

logger = logging.getLogger(__name__)

PlannedStay = Tuple[CellId, int, int]


@dataclass
class UserPlan:
    """Planned stays of one synthetic user and the trips planted among them."""

    user_id: str
    home: CellId
    stays: List[PlannedStay] = field(default_factory=list)
    trips: List[TripLedgerDTO] = field(default_factory=list)


def validate_config(config: SynthConfig, grid: GridSpec, window: StudyWindow) -> int:
    """Check the configuration against the study frame.

    Returns:
        Number of simulated days

    Raises:
        SynthConfigError: If the grid or the window cannot host the requested city
    """
    days = config.days or window.n_days
    if days > window.n_days:
        raise SynthConfigError(
            f"{days} simulated days do not fit a {window.n_days}-day study window",
        )
    if config.long_trip_rate > 0 and (
        grid.diameter * grid.cell_size * config.max_legs < config.l_min_km
    ):
        raise SynthConfigError("grid too small for requested trip lengths")
    return days


class SyntheticTraceGenerator:
    """Simulates home-anchored daily routines with occasional long trips.

    A normal day is home, a local errand closer than ``local_radius_km``, home.
    A long-trip day leaves home in the early morning, passes through single-record
    waypoints until the driven Manhattan distance reaches the planted trip length,
    stays at least ``tau_min_s`` at the destination and drives straight home.
    """

    def __init__(
        self,
        config: SynthConfig,
        grid: GridSpec,
        window: StudyWindow,
    ) -> None:
        """
        Initialize the generator.

        Args:
            config: City and routine parameters
            grid: Study grid
            window: Study window; its start is the first simulated midnight
        """
        self._days = validate_config(config, grid, window)
        self._config = config
        self._grid = grid
        self._window = window
        self._battery = BatteryParams()
        weights = np.array([blob.weight for blob in config.home_blobs], dtype=float)
        self._blob_p = weights / weights.sum()

    def _travel_s(self, km: float) -> int:
        return max(60, math.ceil(km / self._config.speed_kmh * SECONDS_PER_HOUR))

    def _sample_home(self, rng: np.random.Generator) -> CellId:
        blob = self._config.home_blobs[rng.choice(len(self._blob_p), p=self._blob_p)]
        width = self._grid.nx * self._grid.cell_size
        height = self._grid.ny * self._grid.cell_size
        x = np.clip(blob.x * width + rng.normal(0.0, blob.sigma * width), 0, width)
        y = np.clip(blob.y * height + rng.normal(0.0, blob.sigma * height), 0, height)
        col = min(int(x // self._grid.cell_size), self._grid.nx - 1)
        row = min(int(y // self._grid.cell_size), self._grid.ny - 1)
        return self._grid.index(row, col)

    def _local_cell(self, rng: np.random.Generator, home: CellId) -> CellId:
        hops = int(self._config.local_radius_km // self._grid.cell_size)
        if hops < 1:
            return home
        row, col = self._grid.row_col(home)
        radius = int(rng.integers(1, hops + 1))
        dr = int(rng.integers(-radius, radius + 1))
        dc = (radius - abs(dr)) * (1 if rng.random() < 0.5 else -1)
        row = min(max(row + dr, 0), self._grid.ny - 1)
        col = min(max(col + dc, 0), self._grid.nx - 1)
        return self._grid.index(row, col)

    def _next_leg(
        self,
        rng: np.random.Generator,
        current: CellId,
        legs: int,
    ) -> CellId:
        if legs <= self._config.max_legs:
            while True:
                cell = int(rng.integers(self._grid.n_cells))
                if cell != current:
                    return cell
        # Past the leg bound, head for the farthest corner to guarantee progress.
        corners = [
            self._grid.index(r, c)
            for r in {0, self._grid.ny - 1}
            for c in {0, self._grid.nx - 1}
        ]
        return max(corners, key=lambda cell: self._grid.hop_distance(current, cell))

    def _local_day(
        self,
        rng: np.random.Generator,
        plan: UserPlan,
        midnight: int,
        home_since: int,
    ) -> Tuple[List[PlannedStay], List[TripLedgerDTO], int]:
        local = self._local_cell(rng, plan.home)
        if local == plan.home:
            return [], [], home_since
        depart = max(
            midnight + int(rng.uniform(7.0, 9.5) * SECONDS_PER_HOUR),
            home_since + self._config.tau_min_s,
        )
        travel = self._travel_s(self._grid.manhattan_km(plan.home, local))
        arrive = depart + travel
        leave = max(
            midnight + int(rng.uniform(16.0, 19.0) * SECONDS_PER_HOUR),
            arrive,
        )
        stays = [(plan.home, home_since, depart), (local, arrive, leave)]
        return stays, [], leave + travel

    def _long_trip_day(
        self,
        rng: np.random.Generator,
        plan: UserPlan,
        midnight: int,
        home_since: int,
    ) -> Tuple[List[PlannedStay], List[TripLedgerDTO], int]:
        cfg = self._config
        depart = max(
            midnight + int(rng.uniform(6.5, 8.0) * SECONDS_PER_HOUR),
            home_since + cfg.tau_min_s,
        )
        factor = min(
            1.05 + cfg.trip_pareto_scale * rng.pareto(cfg.trip_pareto_shape),
            cfg.max_trip_factor,
        )
        target_km = cfg.l_min_km * factor

        stays: List[PlannedStay] = [(plan.home, home_since, depart)]
        current, travelled, clock, legs = plan.home, 0.0, depart, 0
        while True:
            legs += 1
            nxt = self._next_leg(rng, current, legs)
            km = self._grid.manhattan_km(current, nxt)
            travelled += km
            clock += self._travel_s(km)
            if travelled >= target_km and nxt != plan.home:
                break
            stays.append((nxt, clock, clock))
            current = nxt

        stay_s = max(
            cfg.tau_min_s,
            int(rng.integers(cfg.dest_stay_min_s, cfg.dest_stay_max_s + 1)),
        )
        back = clock + stay_s
        back += self._travel_s(self._grid.manhattan_km(nxt, plan.home))
        if back >= self._window.end:
            return [], [], back
        stays.append((nxt, clock, clock + stay_s))
        trip = TripLedgerDTO(
            user_id=plan.user_id,
            arrival_cell=nxt,
            arrival_slot=self._window.slot_of(clock),
            trip_km=travelled,
            charge_left=battery_level(self._battery, travelled),
        )
        return stays, [trip], back

    def plan_user(self, index: int, rng: np.random.Generator) -> UserPlan:
        """Plan the stays of one user over all simulated days."""
        plan = UserPlan(user_id=f"u{index:05d}", home=self._sample_home(rng))
        last = self._window.start + self._days * SECONDS_PER_DAY - 1
        home_since = self._window.start
        for day in range(self._days):
            midnight = self._window.start + day * SECONDS_PER_DAY
            plan_day = (
                self._long_trip_day
                if rng.random() < self._config.long_trip_rate
                else self._local_day
            )
            stays, trips, back = plan_day(rng, plan, midnight, home_since)
            # A day that would not be back home before the window closes is dropped.
            if back > last:
                continue
            plan.stays.extend(stays)
            plan.trips.extend(trips)
            home_since = back
        plan.stays.append((plan.home, home_since, last))
        return plan

    def dense_records(self, plan: UserPlan) -> List[RawRecord]:
        """A record every ``dense_interval_s`` across each stay, its end included."""
        records: List[RawRecord] = []
        interval = self._config.dense_interval_s
        for cell, start, end in plan.stays:
            times = list(range(start, end, interval))
            if not times or times[-1] != end:
                times.append(end)
            records.extend(
                RawRecord(user_id=plan.user_id, timestamp=t, cell=cell) for t in times
            )
        return records

    def sparse_records(
        self,
        plan: UserPlan,
        rng: np.random.Generator,
    ) -> List[RawRecord]:
        """Phone events at lognormal inter-event times.

        An event during travel is attributed to the stay being travelled to.
        """
        mu = math.log(self._config.median_inter_event_min * 60.0)
        starts = np.array([start for _cell, start, _end in plan.stays])
        ends = np.array([end for _cell, _start, end in plan.stays])
        cells = [cell for cell, _start, _end in plan.stays]
        first, last = int(starts[0]), int(ends[-1])

        times: List[int] = []
        clock = float(first)
        while clock <= last:
            gaps = rng.lognormal(mu, self._config.inter_event_sigma, size=64)
            for gap in gaps:
                clock += gap
                if clock > last:
                    break
                times.append(int(clock))
        records = []
        for t in times:
            idx = int(np.searchsorted(starts, t, side="right")) - 1
            if t > ends[idx]:
                idx += 1
            records.append(
                RawRecord(user_id=plan.user_id, timestamp=t, cell=cells[idx]),
            )
        return records

    def generate(self) -> Tuple[List[RawRecord], GroundTruthLedgerDTO]:
        """Records grouped per user and sorted by time, plus the ledger."""
        cfg = self._config
        streams = np.random.SeedSequence(cfg.seed).spawn(cfg.n_users)
        records: List[RawRecord] = []
        ledger = GroundTruthLedgerDTO()
        for index, stream in enumerate(streams):
            rng = np.random.default_rng(stream)
            plan = self.plan_user(index, rng)
            ledger.homes.append(
                HomeLedgerDTO(user_id=plan.user_id, home_cell=plan.home),
            )
            ledger.trips.extend(plan.trips)
            if cfg.mode == "dense":
                records.extend(self.dense_records(plan))
            else:
                records.extend(self.sparse_records(plan, rng))
        logger.info(
            "Generated %d records for %d users with %d planted long trips",
            len(records),
            cfg.n_users,
            len(ledger.trips),
        )
        return records, ledger


def generate(
    config: SynthConfig,
    grid: GridSpec,
    window: StudyWindow,
) -> Tuple[List[RawRecord], GroundTruthLedgerDTO]:
    """Generate synthetic records and their ground-truth ledger."""
    return SyntheticTraceGenerator(config, grid, window).generate()


class SynthService:
    """Generates a synthetic city and persists its traces and ledger."""

    def __init__(
        self,
        trace_repository: TraceRepository,
        ledger_repository: LedgerRepository,
    ) -> None:
        """
        Initialize the service.

        Args:
            trace_repository: Sink of the generated records
            ledger_repository: Sink of the ground-truth ledger
        """
        self._trace_repository = trace_repository
        self._ledger_repository = ledger_repository

    def run(
        self,
        config: SynthConfig,
        grid: GridSpec,
        window: StudyWindow,
        header: Mapping[str, str],
    ) -> GroundTruthLedgerDTO:
        """Generate and persist; returns the ledger."""
        records, ledger = generate(config, grid, window)
        self._trace_repository.write_records(records, header)
        self._ledger_repository.save(ledger, header)
        return ledger
