"""Exhaustive solver over irredundant covers of small instances."""

from typing import List, Optional, Tuple

import numpy as np

from src.placement.domain.exceptions.domain_exceptions import InstanceTooLargeError
from src.placement.domain.model.cover_problem import (
    CoverProblem,
    Layout,
    is_irredundant,
)
from src.placement.domain.model.value_objects import ExactCriterion

MAX_EXACT_COLUMNS = 25

SortKey = Tuple[float, float, Tuple[int, ...]]


class _Search:
    """Branches on the deficient row with the fewest remaining candidates.

    Branch ``i`` selects that row's ``i``-th candidate and excludes the earlier
    ones, so every cover is reached once.
    """

    def __init__(self, p: CoverProblem, criterion: ExactCriterion) -> None:
        self.p = p
        self.criterion = criterion
        self.requirement = p.requirement
        self.covering = [p.scp.covering_columns(r) for r in range(p.n_rows)]
        self.negative = np.minimum(p.w, 0.0)
        self.best: Optional[Tuple[SortKey, List[int]]] = None

    def key(self, selected: List[int]) -> SortKey:
        chosen = tuple(sorted(selected))
        value = float(self.p.w[list(chosen)].sum()) if chosen else 0.0
        if self.criterion is ExactCriterion.STATION_COUNT:
            return (len(chosen), value, chosen)
        return (value, len(chosen), chosen)

    def pruned(self, selected: List[int], undecided: np.ndarray, value: float) -> bool:
        if self.best is None:
            return False
        best_key = self.best[0]
        if self.criterion is ExactCriterion.STATION_COUNT:
            return len(selected) + 1 > best_key[0]
        bound = value + float(self.negative[undecided].sum())
        return bound > best_key[0]

    def visit(
        self,
        selected: List[int],
        status: np.ndarray,
        counts: np.ndarray,
        value: float,
    ) -> None:
        deficit = self.requirement - counts
        deficient = np.flatnonzero(deficit > 0)
        if deficient.size == 0:
            layout = Layout.from_indices(self.p.n_cols, selected)
            if is_irredundant(self.p, layout):
                key = self.key(selected)
                if self.best is None or key < self.best[0]:
                    self.best = (key, sorted(selected))
            return
        if self.pruned(selected, np.flatnonzero(status == 0), value):
            return

        options = []
        for row in deficient:
            candidates = self.covering[row][status[self.covering[row]] == 0]
            if candidates.size < deficit[row]:
                return
            options.append(candidates)

        excluded: List[int] = []
        for col in min(options, key=len):
            status[col] = 1
            rows = self.p.scp.covered_rows(col)
            counts[rows] += 1
            selected.append(int(col))
            self.visit(selected, status, counts, value + float(self.p.w[col]))
            selected.pop()
            counts[rows] -= 1
            status[col] = -1
            excluded.append(int(col))
        status[excluded] = 0


def exact_solve(
    p: CoverProblem,
    criterion: ExactCriterion = ExactCriterion.WEIGHT,
) -> Layout:
    """Best feasible irredundant cover of a small instance.

    Minimizes the objective (or the station count), then breaks ties by fewer
    stations (or lower objective), then by the lexicographically smallest set of
    selected columns.

    Raises:
        InstanceTooLargeError: If the instance has more than 25 columns
    """
    if p.n_cols > MAX_EXACT_COLUMNS:
        raise InstanceTooLargeError(p.n_cols, MAX_EXACT_COLUMNS)
    search = _Search(p, criterion)
    # status: 0 undecided, 1 selected, -1 excluded.
    status = np.zeros(p.n_cols, dtype=np.int8)
    counts = np.zeros(p.n_rows, dtype=np.int64)
    search.visit([], status, counts, 0.0)
    if search.best is None:
        return Layout.zeros(p.n_cols)
    return Layout.from_indices(p.n_cols, search.best[1])
