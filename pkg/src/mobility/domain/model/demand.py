"""Demand matrix: counted long-trip arrivals per cell and time slot."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.grid.domain.model.grid import CellId

SlotKey = Tuple[CellId, int]


@dataclass(frozen=True)
class DemandMatrix:
    """Sparse IN_{i,t}: arrivals counted per (cell, slot).

    Zero entries are never stored.
    """

    n_cells: int
    n_slots: int
    slot_duration: int
    window_start: int = 0
    counts: Dict[SlotKey, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Validate keys and drop zero entries."""
        cleaned = {}
        for (cell, slot), count in self.counts.items():
            if count < 0:
                raise ValueError("Demand counts must be non-negative")
            if not 0 <= cell < self.n_cells:
                raise ValueError(f"Cell {cell} outside [0, {self.n_cells})")
            if not 0 <= slot < self.n_slots:
                raise ValueError(f"Slot {slot} outside [0, {self.n_slots})")
            if count:
                cleaned[(int(cell), int(slot))] = int(count)
        object.__setattr__(self, "counts", cleaned)

    def with_counts(self, counts: Mapping[SlotKey, int]) -> "DemandMatrix":
        """Same shape, different counts."""
        return DemandMatrix(
            n_cells=self.n_cells,
            n_slots=self.n_slots,
            slot_duration=self.slot_duration,
            window_start=self.window_start,
            counts=dict(counts),
        )

    @property
    def total(self) -> int:
        """Total counted arrivals."""
        return sum(self.counts.values())

    def cell_totals(self, slots: Optional[Iterable[int]] = None) -> np.ndarray:
        """Per-cell arrivals summed over ``slots`` (all slots by default)."""
        totals = np.zeros(self.n_cells, dtype=np.int64)
        wanted = None if slots is None else set(slots)
        for (cell, slot), count in self.counts.items():
            if wanted is None or slot in wanted:
                totals[cell] += count
        return totals

    def cell_peaks(self) -> np.ndarray:
        """Per-cell maximum over slots, max_t IN_{i,t}."""
        peaks = np.zeros(self.n_cells, dtype=np.int64)
        for (cell, _slot), count in self.counts.items():
            peaks[cell] = max(peaks[cell], count)
        return peaks

    def demand_cells(self) -> Tuple[CellId, ...]:
        """Sorted cells with non-zero total demand."""
        return tuple(sorted({cell for cell, _slot in self.counts}))

    def restricted(self, cells: Sequence[CellId]) -> "DemandMatrix":
        """Copy keeping only the given cells."""
        keep = set(cells)
        return self.with_counts(
            {key: count for key, count in self.counts.items() if key[0] in keep},
        )

    def sorted_items(self) -> Iterable[Tuple[CellId, int, int]]:
        """(cell, slot, count) triples sorted by cell then slot."""
        for (cell, slot), count in sorted(self.counts.items()):
            yield cell, slot, count
