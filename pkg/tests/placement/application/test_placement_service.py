"""Tests for cover problem assembly, solver dispatch and the placement service."""

from typing import Callable
from unittest.mock import MagicMock

import numpy as np
import pytest

from src.grid.domain.model.grid import CellNetwork, GridSpec
from src.mobility.domain.model.demand import DemandMatrix
from src.placement.application.services.placement_service import (
    PlacementService,
    build_cover_problem,
    solve,
    solve_batch,
)
from src.placement.domain.exceptions.domain_exceptions import (
    EmptyProblemError,
    InvalidParameterError,
)
from src.placement.domain.model.cover_problem import (
    CoverProblem,
    Layout,
    is_feasible,
    objective,
)
from src.placement.domain.model.value_objects import (
    ExactCriterion,
    GAParams,
    SolverKind,
)

DemandFactory = Callable[..., DemandMatrix]

SMALL_GA = GAParams(population_size=2, iterations=20, elite_k=2)


def test_build_single_demand_cell(
    line_grid: GridSpec,
    line_net: CellNetwork,
    make_demand: DemandFactory,
) -> None:
    """Test that zero-demand cells are pruned from rows and columns."""
    demand = make_demand(line_grid, {(1, 0): 4})

    problem = build_cover_problem(demand, line_net, h=1, delta=1.0)

    assert problem.scp.cells == (1,)
    assert problem.n_cols == 1
    assert problem.w.tolist() == [-4.0]


def test_build_with_offset_multiple(
    line_grid: GridSpec,
    line_net: CellNetwork,
    make_demand: DemandFactory,
) -> None:
    """Test an offset expressed as a multiple of the mean weight."""
    demand = make_demand(line_grid, {(0, 0): 1, (1, 0): 4, (2, 0): 1})

    problem = build_cover_problem(demand, line_net, h=1, delta=1.0, w0_multiple=1.0)

    assert problem.w.tolist() == [1.0, -2.0, 1.0]
    assert problem.weights.w0 == 2.0


def test_build_capacitated(
    line_grid: GridSpec,
    line_net: CellNetwork,
    make_demand: DemandFactory,
) -> None:
    """Test native multiplicities and their row-duplicated form."""
    demand = make_demand(line_grid, {(0, 0): 1, (1, 0): 7, (2, 0): 1})

    native = build_cover_problem(demand, line_net, h=1, delta=1.0, n_c=3)
    duplicated = build_cover_problem(
        demand,
        line_net,
        h=1,
        delta=1.0,
        n_c=3,
        duplicate_rows=True,
    )

    assert native.multiplicity.k.tolist() == [1, 3, 1]
    assert duplicated.scp.n_rows == 5
    assert duplicated.n_cols == 3


def test_build_empty_demand(
    line_grid: GridSpec,
    line_net: CellNetwork,
    make_demand: DemandFactory,
) -> None:
    """Test that an all-zero matrix has no instance."""
    with pytest.raises(EmptyProblemError):
        build_cover_problem(make_demand(line_grid, {}), line_net, h=1, delta=1.0)


@pytest.mark.parametrize(
    ("kind", "expected"),
    [
        (SolverKind.GREEDY, [1]),
        (SolverKind.EXACT, [0, 2]),
    ],
)
def test_solve_deterministic_kinds(
    line_problem: CoverProblem,
    kind: SolverKind,
    expected: list,
) -> None:
    """Test dispatch to the deterministic solvers."""
    outcome = solve(line_problem, kind, SMALL_GA)

    assert outcome.layout == Layout.from_indices(3, expected)
    assert outcome.initial is None


def test_solve_exact_criterion(line_problem: CoverProblem) -> None:
    """Test that the criterion reaches the exact solver."""
    outcome = solve(
        line_problem,
        SolverKind.EXACT,
        SMALL_GA,
        criterion=ExactCriterion.STATION_COUNT,
    )

    assert outcome.layout == Layout.from_indices(3, [1])


def test_solve_genetic_keeps_populations(line_problem: CoverProblem) -> None:
    """Test that a GA run returns both populations and a feasible best."""
    outcome = solve(line_problem, SolverKind.GA, SMALL_GA.with_seed(4))

    assert outcome.initial is not None
    assert outcome.final is not None
    assert outcome.seed == 4
    assert outcome.layout == outcome.final.best()
    assert is_feasible(line_problem, outcome.layout)


def test_batch_returns_best_of_runs(line_problem: CoverProblem) -> None:
    """Test that the batch is never worse than any of its runs."""
    seeds = [0, 1, 2, 3]
    params = GAParams(population_size=2, iterations=0, elite_k=3)

    best = solve_batch(line_problem, SolverKind.STOCHASTIC, params, seeds)

    for seed in seeds:
        single = solve(line_problem, SolverKind.STOCHASTIC, params.with_seed(seed))
        assert objective(line_problem, best.layout) <= objective(
            line_problem,
            single.layout,
        )


def test_batch_ties_go_to_lower_seed(line_problem: CoverProblem) -> None:
    """Test that identical layouts resolve to the lowest seed."""
    params = GAParams(population_size=2, iterations=0, elite_k=1)

    best = solve_batch(line_problem, SolverKind.STOCHASTIC, params, [3, 1, 2])

    assert best.seed == 1
    assert best.layout == Layout.from_indices(3, [1])


def test_batch_in_processes_matches_serial(
    grid_5x5: GridSpec,
    make_problem: Callable[..., CoverProblem],
) -> None:
    """Test that worker processes do not change the result."""
    rng = np.random.default_rng(2)
    problem = make_problem(grid_5x5, range(25), 1, -rng.uniform(1.0, 5.0, size=25))
    params = GAParams(population_size=2, iterations=0, elite_k=4)

    serial = solve_batch(problem, SolverKind.STOCHASTIC, params, [5, 6, 7])
    parallel = solve_batch(problem, SolverKind.STOCHASTIC, params, [5, 6, 7], jobs=2)

    assert serial.layout == parallel.layout
    assert serial.seed == parallel.seed


def test_batch_needs_seeds(line_problem: CoverProblem) -> None:
    """Test that an empty seed list is rejected."""
    with pytest.raises(InvalidParameterError):
        solve_batch(line_problem, SolverKind.GREEDY, SMALL_GA, [])


@pytest.fixture
def line_demand(line_grid: GridSpec, make_demand: DemandFactory) -> DemandMatrix:
    """Uniform demand on the three-cell line."""
    return make_demand(line_grid, {(0, 0): 1, (1, 0): 1, (2, 0): 1})


def _table_names(metrics_repository: MagicMock) -> list:
    return [call.args[0] for call in metrics_repository.save_table.call_args_list]


def test_service_persists_greedy_layout(
    line_problem: CoverProblem,
    line_grid: GridSpec,
    line_demand: DemandMatrix,
) -> None:
    """Test the artifacts written for a greedy run."""
    layout_repository = MagicMock()
    metrics_repository = MagicMock()
    service = PlacementService(layout_repository, metrics_repository)

    placed = service.run(
        line_problem,
        line_demand,
        line_grid,
        SolverKind.GREEDY,
        SMALL_GA,
        [0],
        {"seed": "0"},
    )

    assert placed.stations == [1]
    layout_repository.save.assert_called_once_with(placed, {"seed": "0"})
    layout_repository.save_weights.assert_called_once()
    assert _table_names(metrics_repository) == ["layout_metrics"]
    metrics_repository.save_document.assert_not_called()


def test_service_persists_population_data(
    line_problem: CoverProblem,
    line_grid: GridSpec,
    line_demand: DemandMatrix,
) -> None:
    """Test that a GA run also writes both populations and their comparison."""
    metrics_repository = MagicMock()
    publisher = MagicMock()
    service = PlacementService(MagicMock(), metrics_repository, publisher)

    service.run(
        line_problem,
        line_demand,
        line_grid,
        SolverKind.GA,
        SMALL_GA,
        [0],
        {},
    )

    assert _table_names(metrics_repository) == [
        "layout_metrics",
        "population_initial",
        "population_final",
    ]
    assert metrics_repository.save_document.call_args.args[0] == "comparison"
    assert publisher.publish.called


def test_service_runs_exact_once(
    line_problem: CoverProblem,
    line_grid: GridSpec,
    line_demand: DemandMatrix,
) -> None:
    """Test that the exact solver ignores the seed list."""
    service = PlacementService(MagicMock(), MagicMock())

    placed = service.run(
        line_problem,
        line_demand,
        line_grid,
        SolverKind.EXACT,
        SMALL_GA,
        [0, 1, 2],
        {},
        criterion=ExactCriterion.STATION_COUNT,
    )

    assert placed.stations == [1]
    assert placed.objective == -1.0
