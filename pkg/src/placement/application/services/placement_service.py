"""Building cover problems from demand and running the configured solver."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.grid.domain.model.grid import CellNetwork, GridSpec
from src.grid.domain.model.scp_matrix import build_scp_matrix
from src.mobility.domain.model.demand import DemandMatrix
from src.placement.application.dtos.placement_dtos import PlacedLayoutDTO
from src.placement.application.services.evaluation_service import (
    compare_populations,
    layout_metrics,
    placed_layout,
    population_metrics,
)
from src.placement.application.services.exact import exact_solve
from src.placement.application.services.genetic import GeneticSolver
from src.placement.application.services.greedy import (
    chvatal_greedy,
    stochastic_chvatal,
)
from src.placement.domain.event_publisher.event_publisher import EventPublisher
from src.placement.domain.exceptions.domain_exceptions import InvalidParameterError
from src.placement.domain.model.cover_problem import (
    CoverProblem,
    Layout,
    duplicate_for_capacity,
    objective,
)
from src.placement.domain.model.population import Population
from src.placement.domain.model.value_objects import (
    ExactCriterion,
    GAParams,
    SolverKind,
)
from src.placement.domain.model.weights import (
    CapacityVector,
    apply_offset,
    capacity_requirements,
    compute_weights,
    offset_from_multiple,
    prune_zero_demand,
    slot_demand,
)
from src.placement.domain.repositories.layout_repository import (
    LayoutRepository,
    MetricsRepository,
)

logger = logging.getLogger(__name__)


def build_cover_problem(
    demand: DemandMatrix,
    net: CellNetwork,
    h: int,
    delta: float,
    n_c: Optional[int] = None,
    w0: float = 0.0,
    w0_multiple: Optional[float] = None,
    slots: Optional[Sequence[int]] = None,
    duplicate_rows: bool = False,
) -> CoverProblem:
    """Prune, weight and assemble the set-cover instance for a demand matrix.

    Args:
        demand: Arrival counts on the grid of ``net``
        net: Cell network
        h: Coverage radius in hops
        delta: EV penetration ratio
        n_c: Station capacity; uncapacitated when None
        w0: Absolute weight offset
        w0_multiple: Offset as a multiple of the mean weight; overrides ``w0``
        slots: Slots to average over, all by default
        duplicate_rows: Expand capacitated rows into unit copies

    Raises:
        EmptyProblemError: If the demand is all zero
        InfeasibleInstanceError: If a capacity cannot be met by nearby cells
    """
    retained = prune_zero_demand(demand, net)
    cells = np.asarray(retained.cells, dtype=np.int64)
    scp = build_scp_matrix(net, h, retained.cells)
    weights = compute_weights(demand, net, h, delta, slots, retained)
    offset = w0 if w0_multiple is None else offset_from_multiple(weights, w0_multiple)
    weights = apply_offset(weights, offset)
    if n_c is None:
        multiplicity = CapacityVector.ones(len(retained))
    else:
        multiplicity = capacity_requirements(demand, n_c, retained)
    per_cell, _k_slots = slot_demand(demand, delta, slots)
    problem = CoverProblem(
        scp=scp,
        weights=weights,
        multiplicity=multiplicity,
        retained=retained,
        h=h,
        row_demand=per_cell[cells],
    )
    logger.info(
        "Cover problem with %d candidate cells, h=%d, w0=%.6g",
        problem.n_cols,
        h,
        weights.w0,
    )
    if duplicate_rows:
        return duplicate_for_capacity(problem)
    return problem


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one solver run; populations are set for the GA only."""

    layout: Layout
    seed: Optional[int] = None
    initial: Optional[Population] = None
    final: Optional[Population] = None


def solve(
    problem: CoverProblem,
    kind: SolverKind,
    params: GAParams,
    event_publisher: Optional[EventPublisher] = None,
    criterion: ExactCriterion = ExactCriterion.WEIGHT,
) -> SolveOutcome:
    """Run one solver with the RNG seeded from ``params.seed``."""
    rng = np.random.default_rng(params.seed)
    if kind is SolverKind.GREEDY:
        return SolveOutcome(layout=chvatal_greedy(problem))
    if kind is SolverKind.EXACT:
        return SolveOutcome(layout=exact_solve(problem, criterion))
    if kind is SolverKind.STOCHASTIC:
        layout = stochastic_chvatal(problem, params.elite_k, rng)
        return SolveOutcome(layout=layout, seed=params.seed)

    solver = GeneticSolver(params, event_publisher)
    initial = solver.seed(problem, rng)
    final = solver.evolve(problem, initial.copy(), rng)
    return SolveOutcome(
        layout=final.best(),
        seed=params.seed,
        initial=initial,
        final=final,
    )


def _solve_seed(args: Tuple[CoverProblem, SolverKind, GAParams]) -> SolveOutcome:
    problem, kind, params = args
    return solve(problem, kind, params)


def _rank(problem: CoverProblem, outcome: SolveOutcome) -> Tuple[float, int, int]:
    return (
        objective(problem, outcome.layout),
        outcome.layout.station_count,
        outcome.seed or 0,
    )


def solve_batch(
    problem: CoverProblem,
    kind: SolverKind,
    params: GAParams,
    seeds: Sequence[int],
    jobs: int = 1,
    event_publisher: Optional[EventPublisher] = None,
) -> SolveOutcome:
    """Best outcome over independent runs, one per seed.

    Ties go to fewer stations, then to the lower seed. With ``jobs > 1`` runs go
    to a process pool and events are not published.
    """
    if not seeds:
        raise InvalidParameterError("At least one seed is needed")
    tasks = [(problem, kind, params.with_seed(seed)) for seed in seeds]
    outcomes: List[SolveOutcome]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
            outcomes = list(pool.map(_solve_seed, tasks))
    else:
        outcomes = [
            solve(problem, kind, task_params, event_publisher)
            for _problem, _kind, task_params in tasks
        ]
    best = min(outcomes, key=lambda outcome: _rank(problem, outcome))
    if len(outcomes) > 1:
        logger.info(
            "Best of %d runs: seed %s, objective %.6g",
            len(outcomes),
            best.seed,
            objective(problem, best.layout),
        )
    return best


class PlacementService:
    """Solves a cover problem and persists the layout and its metrics."""

    def __init__(
        self,
        layout_repository: LayoutRepository,
        metrics_repository: MetricsRepository,
        event_publisher: Optional[EventPublisher] = None,
    ) -> None:
        """
        Initialize the service.

        Args:
            layout_repository: Destination of the layout and weights
            metrics_repository: Destination of metric tables
            event_publisher: Receiver of solver progress events
        """
        self._layout_repository = layout_repository
        self._metrics_repository = metrics_repository
        self._event_publisher = event_publisher

    def run(
        self,
        problem: CoverProblem,
        demand: DemandMatrix,
        grid: GridSpec,
        kind: SolverKind,
        params: GAParams,
        seeds: Sequence[int],
        header: Mapping[str, str],
        jobs: int = 1,
        criterion: ExactCriterion = ExactCriterion.WEIGHT,
    ) -> PlacedLayoutDTO:
        """Solve, then write the layout, weights, metrics and GA scatter data."""
        if kind is SolverKind.EXACT:
            outcome = solve(problem, kind, params, criterion=criterion)
        else:
            outcome = solve_batch(
                problem,
                kind,
                params,
                seeds,
                jobs,
                self._event_publisher,
            )
        placed = placed_layout(problem, outcome.layout)
        self._layout_repository.save(placed, header)
        self._layout_repository.save_weights(problem.scp.cells, problem.w, header)
        metrics = layout_metrics(placed, demand, grid, label=kind.value)
        self._metrics_repository.save_table("layout_metrics", [metrics], header)
        logger.info(
            "%s layout: %d stations, objective %.6g, average distance %.4f km",
            kind.value,
            placed.station_count,
            placed.objective,
            metrics.avg_distance_km,
        )

        if outcome.initial is not None and outcome.final is not None:
            initial = population_metrics(
                outcome.initial, problem, demand, grid, "initial"
            )
            final = population_metrics(outcome.final, problem, demand, grid, "final")
            metrics_repository = self._metrics_repository
            metrics_repository.save_table("population_initial", initial, header)
            metrics_repository.save_table("population_final", final, header)
            comparison = compare_populations(initial, final)
            metrics_repository.save_document("comparison", comparison, header)
            logger.info(
                "GA improvement over the seed population: best %.2f%%, mean %.2f%%",
                100 * comparison.best_improvement,
                100 * comparison.mean_improvement,
            )
        return placed
