"""Tests for the exhaustive small-instance solver."""

import itertools
from typing import Callable, Optional

import numpy as np
import pytest

from src.grid.domain.model.grid import GridSpec
from src.placement.application.services.exact import MAX_EXACT_COLUMNS, exact_solve
from src.placement.application.services.greedy import chvatal_greedy
from src.placement.domain.exceptions.domain_exceptions import InstanceTooLargeError
from src.placement.domain.model.cover_problem import (
    CoverProblem,
    Layout,
    is_irredundant,
    objective,
)
from src.placement.domain.model.value_objects import ExactCriterion

ProblemFactory = Callable[..., CoverProblem]


def _brute_force(problem: CoverProblem) -> Optional[Layout]:
    best = None
    best_key = None
    for bits in itertools.product([False, True], repeat=problem.n_cols):
        layout = Layout(np.array(bits, dtype=bool))
        if not is_irredundant(problem, layout):
            continue
        key = (
            objective(problem, layout),
            layout.station_count,
            tuple(layout.selected()),
        )
        if best_key is None or key < best_key:
            best, best_key = layout, key
    return best


def test_single_cell(grid_3x3: GridSpec, make_problem: ProblemFactory) -> None:
    """Test that a one-cell instance selects that cell."""
    problem = make_problem(grid_3x3, [4], 1, [-2.0])

    assert exact_solve(problem) == Layout.from_indices(1, [0])


def test_line_minimum_weight(line_problem: CoverProblem) -> None:
    """Test the three-cell line under the weight criterion."""
    layout = exact_solve(line_problem)

    assert layout == Layout.from_indices(3, [0, 2])
    assert objective(line_problem, layout) == -2.0


def test_line_minimum_station_count(line_problem: CoverProblem) -> None:
    """Test the three-cell line under the station-count criterion."""
    layout = exact_solve(line_problem, ExactCriterion.STATION_COUNT)

    assert layout == Layout.from_indices(3, [1])
    assert objective(line_problem, layout) == -1.0


def test_ties_prefer_fewer_stations(
    line_grid: GridSpec,
    make_problem: ProblemFactory,
) -> None:
    """Test that equal objectives go to the smaller layout."""
    problem = make_problem(line_grid, [0, 1, 2], 1, [-1.0, -2.0, -1.0])

    assert exact_solve(problem) == Layout.from_indices(3, [1])


def test_never_worse_than_greedy(
    grid_5x5: GridSpec,
    make_problem: ProblemFactory,
) -> None:
    """Test optimality against the greedy on random weights."""
    rng = np.random.default_rng(17)
    for _ in range(10):
        cells = sorted(rng.choice(25, size=12, replace=False).tolist())
        problem = make_problem(grid_5x5, cells, 1, -rng.uniform(0.0, 5.0, size=12))

        layout = exact_solve(problem)

        assert is_irredundant(problem, layout)
        greedy = chvatal_greedy(problem)
        assert objective(problem, layout) <= objective(problem, greedy)


def test_matches_brute_force(grid_3x3: GridSpec, make_problem: ProblemFactory) -> None:
    """Test the branch and bound search against plain enumeration."""
    rng = np.random.default_rng(5)
    for h in (1, 2):
        for _ in range(5):
            w = -rng.integers(0, 5, size=9).astype(float)
            k = rng.integers(1, 3, size=9)
            problem = make_problem(grid_3x3, range(9), h, w, k=k)

            assert exact_solve(problem) == _brute_force(problem)


def test_guard_on_large_instances(make_problem: ProblemFactory) -> None:
    """Test that more than the column limit is refused."""
    grid = GridSpec(origin_x=0.0, origin_y=0.0, cell_size=0.5, nx=13, ny=2)
    problem = make_problem(grid, range(26), 1, [-1.0] * 26)

    with pytest.raises(InstanceTooLargeError) as exc_info:
        exact_solve(problem)

    assert exc_info.value.limit == MAX_EXACT_COLUMNS
    assert exc_info.value.n_cols == 26
