"""GA population: distinct feasible irredundant layouts with cached objectives."""

from typing import Dict, Iterator, List, Optional, Sequence

import numpy as np

from src.placement.domain.model.cover_problem import Layout


class Population:
    """Distinct layouts in insertion order with their objective values."""

    def __init__(
        self,
        members: Optional[Sequence[Layout]] = None,
        objectives: Optional[Sequence[float]] = None,
    ) -> None:
        self._members: List[Layout] = []
        self._objectives: List[float] = []
        self._index: Dict[Layout, int] = {}
        for layout, value in zip(members or [], objectives or []):
            self.add(layout, value)

    def __len__(self) -> int:
        return len(self._members)

    def __contains__(self, layout: object) -> bool:
        return layout in self._index

    def __iter__(self) -> Iterator[Layout]:
        return iter(self._members)

    @property
    def members(self) -> List[Layout]:
        """Members in insertion order."""
        return list(self._members)

    @property
    def objectives(self) -> np.ndarray:
        """Objective of each member, aligned with ``members``."""
        return np.asarray(self._objectives, dtype=float)

    def member(self, index: int) -> Layout:
        """Member at ``index``."""
        return self._members[index]

    def objective_of(self, layout: Layout) -> float:
        """Cached objective of a member."""
        return self._objectives[self._index[layout]]

    def add(self, layout: Layout, value: float) -> bool:
        """Append a layout unless an equal one is already a member."""
        if layout in self._index:
            return False
        self._index[layout] = len(self._members)
        self._members.append(layout)
        self._objectives.append(float(value))
        return True

    def replace(self, index: int, layout: Layout, value: float) -> None:
        """Swap the member at ``index`` for a layout not yet in the population."""
        if layout in self._index:
            raise ValueError("Population members must be distinct")
        del self._index[self._members[index]]
        self._members[index] = layout
        self._objectives[index] = float(value)
        self._index[layout] = index

    def best_index(self) -> int:
        """Index of the lowest objective; ties go to the lower index."""
        return int(np.argmin(self.objectives))

    def best(self) -> Layout:
        """Member with the lowest objective."""
        return self._members[self.best_index()]

    @property
    def best_objective(self) -> float:
        """Lowest member objective."""
        return float(min(self._objectives))

    @property
    def mean_objective(self) -> float:
        """Mean member objective."""
        return float(np.mean(self._objectives))

    def copy(self) -> "Population":
        """Independent population with the same members."""
        return Population(self._members, self._objectives)
