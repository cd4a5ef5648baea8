"""Chvátal-style greedy cover construction and layout repair."""

from typing import Callable, Optional

import numpy as np

from src.placement.domain.exceptions.domain_exceptions import (
    InfeasibleInstanceError,
    InvalidParameterError,
)
from src.placement.domain.model.cover_problem import (
    CoverProblem,
    Layout,
    coverage_counts,
    remove_redundant,
)

Picker = Callable[[np.ndarray], int]


def rank_candidates(w: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Columns still covering deficient rows, best first.

    The score of a column is its weight per deficient row it covers, lower is
    better; ties go to more covered rows, then to the lower index.
    """
    candidates = np.flatnonzero(u > 0)
    scores = w[candidates] / u[candidates]
    return candidates[np.lexsort((candidates, -u[candidates], scores))]


def greedy_complete(p: CoverProblem, x: np.ndarray, pick: Picker) -> np.ndarray:
    """Add columns to ``x`` in place until every row meets its requirement.

    Args:
        p: Problem to cover
        x: Selected columns, extended in place
        pick: Chooses a position in the ranked candidate array

    Returns:
        ``x``

    Raises:
        InfeasibleInstanceError: If a row cannot be covered often enough
    """
    requirement = p.requirement
    counts = coverage_counts(p, Layout(x))
    deficient = counts < requirement
    if not deficient.any():
        return x
    # u[j]: deficient rows covered by unselected column j.
    u = np.asarray(p.scp.columns.T @ deficient.astype(np.int64)).ravel()
    u[x] = 0
    while deficient.any():
        ranked = rank_candidates(p.w, u)
        if ranked.size == 0:
            row = int(np.flatnonzero(deficient)[0])
            raise InfeasibleInstanceError(
                row,
                int(p.scp.covering_columns(row).size),
                int(requirement[row]),
            )
        col = int(ranked[pick(ranked)])
        x[col] = True
        rows = p.scp.covered_rows(col)
        counts[rows] += 1
        done = rows[deficient[rows] & (counts[rows] >= requirement[rows])]
        deficient[done] = False
        if done.size:
            touched = np.concatenate([p.scp.covering_columns(r) for r in done])
            np.subtract.at(u, touched, 1)
        u[x] = 0
    return x


def _first(_ranked: np.ndarray) -> int:
    return 0


def _elite_picker(elite_k: int, rng: np.random.Generator) -> Picker:
    def pick(ranked: np.ndarray) -> int:
        size = min(elite_k, ranked.size)
        # No draw for a single candidate keeps elite_k=1 identical to the greedy.
        return 0 if size == 1 else int(rng.integers(size))

    return pick


def chvatal_greedy(p: CoverProblem) -> Layout:
    """Deterministic greedy cover followed by redundancy removal."""
    x = greedy_complete(p, np.zeros(p.n_cols, dtype=bool), _first)
    return remove_redundant(p, Layout(x))


def stochastic_chvatal(
    p: CoverProblem,
    elite_k: int,
    rng: np.random.Generator,
) -> Layout:
    """Greedy cover picking uniformly among the ``elite_k`` best candidates."""
    if elite_k < 1:
        raise InvalidParameterError("elite_k must be at least 1")
    x = greedy_complete(
        p,
        np.zeros(p.n_cols, dtype=bool),
        _elite_picker(elite_k, rng),
    )
    return remove_redundant(p, Layout(x))


def repair(
    p: CoverProblem,
    layout: Layout,
    rng: Optional[np.random.Generator] = None,
    elite_k: int = 1,
) -> Layout:
    """Complete any binary vector greedily, then drop redundant columns."""
    pick = _first if rng is None or elite_k == 1 else _elite_picker(elite_k, rng)
    x = greedy_complete(p, layout.mutable(), pick)
    return remove_redundant(p, Layout(x))
