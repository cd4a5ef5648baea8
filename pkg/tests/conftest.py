"""Test fixtures for the station placement pipeline."""

from typing import Callable, Dict, Optional, Sequence

import numpy as np
import pytest

from src.grid.domain.model.grid import CellNetwork, GridSpec, build_network
from src.grid.domain.model.scp_matrix import build_scp_matrix
from src.mobility.domain.model.demand import DemandMatrix
from src.placement.domain.model.cover_problem import CoverProblem
from src.placement.domain.model.weights import (
    CapacityVector,
    RetainedCells,
    WeightVector,
)

ProblemFactory = Callable[..., CoverProblem]
DemandFactory = Callable[..., DemandMatrix]


@pytest.fixture
def line_grid() -> GridSpec:
    """Three cells in a row, 0.5 km wide."""
    return GridSpec(origin_x=0.0, origin_y=0.0, cell_size=0.5, nx=3, ny=1)


@pytest.fixture
def line_net(line_grid: GridSpec) -> CellNetwork:
    """Cell network of the three-cell line."""
    return build_network(line_grid)


@pytest.fixture
def grid_3x3() -> GridSpec:
    """3x3 grid fixture."""
    return GridSpec(origin_x=0.0, origin_y=0.0, cell_size=0.5, nx=3, ny=3)


@pytest.fixture
def grid_5x5() -> GridSpec:
    """5x5 grid fixture."""
    return GridSpec(origin_x=0.0, origin_y=0.0, cell_size=0.5, nx=5, ny=5)


@pytest.fixture
def make_problem() -> ProblemFactory:
    """Factory of cover problems with explicit weights and multiplicities."""

    def _make(
        grid: GridSpec,
        cells: Sequence[int],
        h: int,
        w: Sequence[float],
        k: Optional[Sequence[int]] = None,
    ) -> CoverProblem:
        net = build_network(grid)
        retained = RetainedCells.of(cells, grid.n_cells)
        size = len(retained)
        multiplicity = (
            CapacityVector.ones(size)
            if k is None
            else CapacityVector(k=np.asarray(k, dtype=np.int64), n_c=1)
        )
        return CoverProblem(
            scp=build_scp_matrix(net, h, retained.cells),
            weights=WeightVector(
                w=np.asarray(w, dtype=float),
                delta=1.0,
                h=h,
                k_slots=1,
            ),
            multiplicity=multiplicity,
            retained=retained,
            h=h,
            row_demand=np.ones(size),
        )

    return _make


@pytest.fixture
def line_problem(line_grid: GridSpec, make_problem: ProblemFactory) -> CoverProblem:
    """Three-cell line, h=1, every weight -1."""
    return make_problem(line_grid, [0, 1, 2], 1, [-1.0, -1.0, -1.0])


@pytest.fixture
def make_demand() -> DemandFactory:
    """Factory of demand matrices from (cell, slot) counts."""

    def _make(
        grid: GridSpec,
        counts: Dict,
        n_slots: int = 1,
        slot_duration: int = 1800,
    ) -> DemandMatrix:
        return DemandMatrix(
            n_cells=grid.n_cells,
            n_slots=n_slots,
            slot_duration=slot_duration,
            counts=dict(counts),
        )

    return _make
