"""Shared builders for the end-to-end acceptance runs."""

from collections import defaultdict
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import pytest

from src.grid.domain.model.grid import GridSpec
from src.mobility.application.services.trace_service import build_trace
from src.mobility.domain.model.demand import DemandMatrix
from src.mobility.domain.model.trace import RawRecord, TraceLog
from src.mobility.domain.model.value_objects import PipelineParams

InstanceFactory = Callable[..., Tuple[GridSpec, DemandMatrix]]
TraceBuilder = Callable[[Sequence[RawRecord], PipelineParams], List[TraceLog]]


@pytest.fixture(scope="session")
def random_instance() -> InstanceFactory:
    """Random grid of at most ``max_nx`` x ``max_ny`` cells with random demand."""

    def _make(
        rng: np.random.Generator,
        max_nx: int = 5,
        max_ny: int = 4,
        n_slots: int = 4,
        occupancy: float = 0.6,
        mean_count: float = 3.0,
    ) -> Tuple[GridSpec, DemandMatrix]:
        nx = int(rng.integers(2, max_nx + 1))
        ny = int(rng.integers(2, max_ny + 1))
        grid = GridSpec(origin_x=0.0, origin_y=0.0, cell_size=0.5, nx=nx, ny=ny)
        counts: Dict[Tuple[int, int], int] = {}
        for cell in range(grid.n_cells):
            if rng.random() < occupancy:
                slot = int(rng.integers(n_slots))
                counts[(cell, slot)] = 1 + int(rng.poisson(mean_count - 1))
        if not counts:
            counts[(int(rng.integers(grid.n_cells)), 0)] = 1
        demand = DemandMatrix(
            n_cells=grid.n_cells,
            n_slots=n_slots,
            slot_duration=1800,
            counts=counts,
        )
        return grid, demand

    return _make


@pytest.fixture(scope="session")
def build_traces() -> TraceBuilder:
    """Per-user traces of a record stream, in user id order."""

    def _build(
        records: Sequence[RawRecord],
        params: PipelineParams,
    ) -> List[TraceLog]:
        grouped: Dict[str, List[RawRecord]] = defaultdict(list)
        for record in records:
            grouped[record.user_id].append(record)
        return [
            build_trace(user_id, user_records, params)
            for user_id, user_records in sorted(grouped.items())
        ]

    return _build
