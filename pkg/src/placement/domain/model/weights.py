"""Demand model: cell weights, capacity multiplicities, offset and pruning."""

import math
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage

from src.grid.domain.model.grid import CellId, CellNetwork
from src.mobility.domain.model.demand import DemandMatrix
from src.placement.domain.exceptions.domain_exceptions import (
    EmptyProblemError,
    InvalidParameterError,
)


@dataclass(frozen=True)
class RetainedCells:
    """Cells kept in the reduced problem and the maps to and from the full grid."""

    cells: Tuple[CellId, ...]
    n_cells: int
    forward: Dict[CellId, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Check ordering and build the forward map."""
        if list(self.cells) != sorted(set(self.cells)):
            raise ValueError("Retained cells must be sorted and distinct")
        if self.cells and not 0 <= self.cells[0] <= self.cells[-1] < self.n_cells:
            raise ValueError("Retained cells must address the grid")
        object.__setattr__(
            self,
            "forward",
            {cell: index for index, cell in enumerate(self.cells)},
        )

    @classmethod
    def of(cls, cells: Iterable[CellId], n_cells: int) -> "RetainedCells":
        """Retained set from any iterable of cells."""
        return cls(cells=tuple(sorted(set(cells))), n_cells=n_cells)

    def __len__(self) -> int:
        return len(self.cells)

    def to_reduced(self, cell: CellId) -> int:
        """Problem index of a full-grid cell."""
        return self.forward[cell]

    def to_full(self, index: int) -> CellId:
        """Full-grid cell of a problem index."""
        return self.cells[index]


@dataclass(frozen=True)
class WeightVector:
    """Per retained cell weight; non-positive unless an offset was applied."""

    w: np.ndarray
    delta: float
    h: int
    k_slots: int
    w0: float = 0.0

    def __len__(self) -> int:
        return int(self.w.size)

    @property
    def mean(self) -> float:
        """Mean cell weight."""
        return float(self.w.mean()) if self.w.size else 0.0


@dataclass(frozen=True)
class CapacityVector:
    """Number of distinct stations that must cover each retained cell."""

    k: np.ndarray
    n_c: int

    def __post_init__(self) -> None:
        """Validate multiplicities."""
        if self.k.size and int(self.k.min()) < 1:
            raise ValueError("Multiplicities must be at least 1")

    @classmethod
    def ones(cls, size: int) -> "CapacityVector":
        """Uncapacitated multiplicities."""
        return cls(k=np.ones(size, dtype=np.int64), n_c=0)

    @property
    def is_unit(self) -> bool:
        """Whether every cell needs a single covering station."""
        return bool(np.all(self.k == 1))


def hop_kernel(h: int) -> np.ndarray:
    """Square kernel holding (d - h) at hop offset d <= h and 0 beyond."""
    offsets = np.arange(-h, h + 1)
    hops = np.abs(offsets)[:, None] + np.abs(offsets)[None, :]
    return np.where(hops <= h, hops - h, 0).astype(float)


def slot_demand(
    demand: DemandMatrix,
    delta: float,
    slots: Optional[Sequence[int]] = None,
) -> Tuple[np.ndarray, int]:
    """Per-cell EV demand delta * IN averaged over the slots, and the slot count."""
    if slots is None:
        k_slots = demand.n_slots
        totals = demand.cell_totals()
    else:
        if not slots:
            raise InvalidParameterError("At least one time slot is needed")
        k_slots = len(slots)
        totals = demand.cell_totals(slots)
    return delta * totals.astype(float) / k_slots, k_slots


def compute_weights(
    demand: DemandMatrix,
    net: CellNetwork,
    h: int,
    delta: float,
    slots: Optional[Sequence[int]] = None,
    retained: Optional[RetainedCells] = None,
) -> WeightVector:
    """Discomfort weight of a station at each retained cell.

    ``w_i`` sums, over the cells ``z`` within ``h`` hops of ``i``, the demand of
    ``z`` times ``(hop(i, z) - h)``, time averaged over ``slots`` (all slots by
    default). The station's own cell counts at hop 0.

    Args:
        demand: Arrival counts
        net: Cell network of the grid the demand lives on
        h: Coverage radius in hops
        delta: EV penetration ratio in (0, 1]
        slots: Slots to average over
        retained: Cells to report weights for; every cell by default

    Returns:
        The weight vector, aligned with ``retained``
    """
    if h < 0:
        raise InvalidParameterError("Coverage radius h must be non-negative")
    if not 0 < delta <= 1:
        raise InvalidParameterError("Penetration ratio must be in (0, 1]")
    grid = net.grid
    if demand.n_cells != grid.n_cells:
        raise InvalidParameterError("Demand and grid cell counts differ")
    per_cell, k_slots = slot_demand(demand, delta, slots)

    weights = ndimage.correlate(
        per_cell.reshape(grid.ny, grid.nx),
        hop_kernel(h),
        mode="constant",
        cval=0.0,
    ).ravel()
    if retained is not None:
        weights = weights[np.asarray(retained.cells, dtype=np.int64)]
    return WeightVector(w=weights, delta=delta, h=h, k_slots=k_slots)


def capacity_requirements(
    demand: DemandMatrix,
    n_c: int,
    retained: Optional[RetainedCells] = None,
) -> CapacityVector:
    """k_i = ceil(peak_i / n_c), at least 1; peak_i is the busiest slot of cell i."""
    if n_c < 1:
        raise InvalidParameterError("Station capacity n_c must be at least 1")
    peaks = demand.cell_peaks()
    if retained is not None:
        peaks = peaks[np.asarray(retained.cells, dtype=np.int64)]
    k = np.maximum(1, -(-peaks // n_c)).astype(np.int64)
    return CapacityVector(k=k, n_c=n_c)


def apply_offset(weights: WeightVector, w0: float) -> WeightVector:
    """Add a uniform non-negative offset to every weight."""
    if w0 < 0 or math.isnan(w0):
        raise InvalidParameterError("Offset w0 must be non-negative")
    if w0 == 0:
        return weights
    return replace(weights, w=weights.w + w0, w0=weights.w0 + w0)


def offset_from_multiple(weights: WeightVector, multiple: float) -> float:
    """Offset ``multiple * |mean weight|``."""
    if multiple < 0:
        raise InvalidParameterError("Offset multiple must be non-negative")
    return multiple * abs(weights.mean)


def prune_zero_demand(demand: DemandMatrix, net: CellNetwork) -> RetainedCells:
    """Keep exactly the cells with non-zero total demand.

    Raises:
        EmptyProblemError: If no cell has demand
    """
    if demand.n_cells != net.grid.n_cells:
        raise InvalidParameterError("Demand and grid cell counts differ")
    cells = demand.demand_cells()
    if not cells:
        raise EmptyProblemError()
    return RetainedCells(cells=cells, n_cells=demand.n_cells)
