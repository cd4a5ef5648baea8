"""Weighted set-cover instance, station layouts and their evaluation."""

from dataclasses import dataclass, replace
from typing import Iterable, Optional, Tuple

import numpy as np

from src.grid.domain.model.grid import CellId
from src.grid.domain.model.scp_matrix import SCPMatrix
from src.placement.domain.exceptions.domain_exceptions import (
    DimensionMismatchError,
    InfeasibleInstanceError,
    InfeasibleLayoutError,
)
from src.placement.domain.model.weights import (
    CapacityVector,
    RetainedCells,
    WeightVector,
)


class Layout:
    """Binary station-placement vector over the candidate columns.

    Layouts are immutable and hashable by content.
    """

    __slots__ = ("_key", "x")

    def __init__(self, x: np.ndarray) -> None:
        bits = np.array(x, dtype=bool)
        bits.setflags(write=False)
        self.x = bits
        self._key = np.packbits(bits).tobytes() + bits.size.to_bytes(8, "little")

    @classmethod
    def zeros(cls, n: int) -> "Layout":
        """Empty layout."""
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> "Layout":
        """Layout selecting the given columns."""
        bits = np.zeros(n, dtype=bool)
        bits[list(indices)] = True
        return cls(bits)

    def __len__(self) -> int:
        return int(self.x.size)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Layout) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Layout({self.selected().tolist()})"

    @property
    def station_count(self) -> int:
        """Number of selected columns."""
        return int(self.x.sum())

    def selected(self) -> np.ndarray:
        """Selected column indices in increasing order."""
        return np.flatnonzero(self.x)

    def mutable(self) -> np.ndarray:
        """Writable copy of the bit vector."""
        return self.x.copy()


@dataclass(frozen=True)
class CoverProblem:
    """Set-cover instance over the retained cells.

    Row ``i`` must be covered by at least ``requirement[i]`` selected columns. The
    requirement is the capacity multiplicity, or the copy rank for instances
    whose rows were duplicated per copy of a cell.
    """

    scp: SCPMatrix
    weights: WeightVector
    multiplicity: CapacityVector
    retained: RetainedCells
    h: int
    # Per-row time-averaged EV demand, the input of the weight formula.
    row_demand: np.ndarray
    copy_rank: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        """Check dimensions and constructibility."""
        if len(self.weights) != self.scp.n_cols:
            raise DimensionMismatchError(self.scp.n_cols, len(self.weights))
        if self.multiplicity.k.size != self.scp.n_rows:
            raise DimensionMismatchError(self.scp.n_rows, self.multiplicity.k.size)
        if self.row_demand.size != self.scp.n_rows:
            raise DimensionMismatchError(self.scp.n_rows, self.row_demand.size)
        available = np.diff(self.scp.rows.indptr)
        short = np.flatnonzero(available < self.requirement)
        if short.size:
            row = int(short[0])
            raise InfeasibleInstanceError(
                row,
                int(available[row]),
                int(self.requirement[row]),
            )

    @property
    def n_cols(self) -> int:
        """Number of station candidates."""
        return self.scp.n_cols

    @property
    def n_rows(self) -> int:
        """Number of universe elements."""
        return self.scp.n_rows

    @property
    def w(self) -> np.ndarray:
        """Column weights."""
        return self.weights.w

    @property
    def requirement(self) -> np.ndarray:
        """Minimum number of selected covering columns per row."""
        return self.multiplicity.k if self.copy_rank is None else self.copy_rank

    def station_cells(self, layout: Layout) -> Tuple[CellId, ...]:
        """Full-grid cells of the selected columns, sorted."""
        check_dimensions(self, layout)
        return tuple(self.scp.cells[i] for i in layout.selected())


def check_dimensions(p: CoverProblem, layout: Layout) -> None:
    """Raise DimensionMismatchError unless the layout fits the problem."""
    if len(layout) != p.n_cols:
        raise DimensionMismatchError(p.n_cols, len(layout))


def objective(p: CoverProblem, layout: Layout) -> float:
    """Sum of the weights of the selected columns."""
    check_dimensions(p, layout)
    return float(p.w[layout.x].sum())


def coverage_counts(p: CoverProblem, layout: Layout) -> np.ndarray:
    """Number of selected columns covering each row."""
    check_dimensions(p, layout)
    return np.asarray(p.scp.rows @ layout.x.astype(np.int64)).ravel()


def is_feasible(p: CoverProblem, layout: Layout) -> bool:
    """Whether every row is covered at least as often as required."""
    return bool(np.all(coverage_counts(p, layout) >= p.requirement))


def is_irredundant(p: CoverProblem, layout: Layout) -> bool:
    """Whether the layout is feasible and no selected column can be dropped."""
    counts = coverage_counts(p, layout)
    requirement = p.requirement
    if np.any(counts < requirement):
        return False
    for col in layout.selected():
        rows = p.scp.covered_rows(col)
        if np.all(counts[rows] > requirement[rows]):
            return False
    return True


def remove_redundant(p: CoverProblem, layout: Layout) -> Layout:
    """Drop redundant columns, worst (highest) weight first.

    Ties between equal weights go to the lower column index. A single pass
    suffices: a column kept when examined stays necessary afterwards.

    Raises:
        InfeasibleLayoutError: If the layout is not feasible
    """
    counts = coverage_counts(p, layout)
    requirement = p.requirement
    if np.any(counts < requirement):
        raise InfeasibleLayoutError("Cannot drop redundancy from an infeasible layout")
    selected = layout.selected()
    order = selected[np.lexsort((selected, -p.w[selected]))]
    x = layout.mutable()
    for col in order:
        rows = p.scp.covered_rows(col)
        if np.all(counts[rows] > requirement[rows]):
            x[col] = False
            counts[rows] -= 1
    return Layout(x)


def duplicate_for_capacity(p: CoverProblem) -> CoverProblem:
    """Expand rows so every capacity copy of a cell is its own universe element.

    Row ``i`` appears ``k_i`` times with copy ranks ``1..k_i``; copy ``m`` is
    covered once ``m`` selected stations reach the cell. The demand of a
    duplicated cell is split between its copies, so its term in each column
    weight is divided by ``k_i``. Columns are unchanged.
    """
    k = p.multiplicity.k
    if p.copy_rank is not None or p.multiplicity.is_unit:
        return p

    rows, cols, hops = p.scp.entry_hops()
    shares = (hops - p.h) * (p.row_demand[rows] / k[rows])
    w = np.bincount(cols, weights=shares, minlength=p.n_cols) + p.weights.w0

    scp = p.scp.repeat_rows(k)
    copy_rank = np.concatenate([np.arange(1, count + 1) for count in k])
    return CoverProblem(
        scp=scp,
        weights=replace(p.weights, w=w),
        multiplicity=CapacityVector.ones(scp.n_rows),
        retained=p.retained,
        h=p.h,
        row_demand=np.repeat(p.row_demand / k, k),
        copy_rank=copy_rank,
    )
