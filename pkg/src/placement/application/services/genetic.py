"""Genetic algorithm over feasible irredundant layouts.

Parents come from binary tournaments, children from fusion crossover and a
single shared-bit mutation, and every child is repaired before it may replace a
member worse than the population mean.
"""

import logging
import uuid
from typing import Optional, Tuple

import numpy as np

from src.placement.application.services.greedy import repair, stochastic_chvatal
from src.placement.domain.event_publisher.event_publisher import EventPublisher
from src.placement.domain.events.events import (
    BestLayoutImprovedEvent,
    EvolutionCompletedEvent,
    EvolutionStalledEvent,
    PopulationSeededEvent,
)
from src.placement.domain.exceptions.domain_exceptions import (
    InvalidParameterError,
    PopulationTooSmallError,
)
from src.placement.domain.model.cover_problem import (
    CoverProblem,
    Layout,
    objective,
    remove_redundant,
)
from src.placement.domain.model.population import Population
from src.placement.domain.model.value_objects import GAParams, SeedingMethod

logger = logging.getLogger(__name__)

COST_EPSILON = 1e-9


def random_uniform_layout(p: CoverProblem, rng: np.random.Generator) -> Layout:
    """Add columns in uniformly random order until feasible, then drop redundancy."""
    requirement = p.requirement
    counts = np.zeros(p.n_rows, dtype=np.int64)
    missing = int(np.count_nonzero(counts < requirement))
    x = np.zeros(p.n_cols, dtype=bool)
    for col in rng.permutation(p.n_cols):
        if missing == 0:
            break
        x[col] = True
        rows = p.scp.covered_rows(col)
        before = counts[rows] < requirement[rows]
        counts[rows] += 1
        missing -= int(np.count_nonzero(before & (counts[rows] >= requirement[rows])))
    return remove_redundant(p, Layout(x))


def seed_population(
    p: CoverProblem,
    size: int,
    method: SeedingMethod,
    rng: np.random.Generator,
    elite_k: int = 5,
    stall_factor: int = 100,
) -> Population:
    """Build up to ``size`` distinct feasible irredundant layouts.

    Gives up after ``stall_factor * size`` duplicates in a row and returns the
    distinct layouts found so far.
    """
    if size < 1:
        raise InvalidParameterError("Population size must be positive")
    population = Population()
    streak = 0
    limit = stall_factor * size
    while len(population) < size:
        if method is SeedingMethod.RANDOM_UNIFORM:
            layout = random_uniform_layout(p, rng)
        else:
            layout = stochastic_chvatal(p, elite_k, rng)
        if population.add(layout, objective(p, layout)):
            streak = 0
            continue
        streak += 1
        if streak >= limit:
            logger.warning(
                "Only %d distinct layouts found out of %d requested",
                len(population),
                size,
            )
            break
    return population


def binary_tournament(
    population: Population,
    tournament_size: int,
    rng: np.random.Generator,
) -> Tuple[Layout, Layout]:
    """Two parents, each the fittest of an independent random subset.

    Raises:
        PopulationTooSmallError: If the population has fewer than two members
    """
    if len(population) < 2:
        raise PopulationTooSmallError(len(population), 2)
    subset_size = min(tournament_size, len(population))
    values = population.objectives
    parents = []
    for _ in range(2):
        subset = np.sort(rng.choice(len(population), size=subset_size, replace=False))
        parents.append(population.member(int(subset[np.argmin(values[subset])])))
    return parents[0], parents[1]


def crossover_probability(
    value_1: float,
    value_2: float,
    floor: float,
    literal: bool = False,
) -> float:
    """Probability of keeping the first parent's bit where the parents disagree.

    By default objectives are shifted to positive costs above the population
    floor, so the fitter parent contributes more bits. ``literal`` applies the
    raw ratio of objectives, clipped to [0, 1].
    """
    if literal:
        total = value_1 + value_2
        if total == 0:
            return 0.5
        return float(np.clip(value_2 / total, 0.0, 1.0))
    epsilon = COST_EPSILON * abs(floor) if floor != 0 else COST_EPSILON
    cost_1 = value_1 - floor + epsilon
    cost_2 = value_2 - floor + epsilon
    return cost_2 / (cost_1 + cost_2)


def cross_with_probability(
    v1: Layout,
    v2: Layout,
    p_c: float,
    rng: np.random.Generator,
) -> Layout:
    """Child of ``v1`` taking ``v2``'s bit where a uniform draw exceeds ``p_c``."""
    draws = rng.random(len(v1))
    take = (v1.x != v2.x) & (draws > p_c)
    child = v1.mutable()
    child[take] = v2.x[take]
    return Layout(child)


def fusion_crossover(
    v1: Layout,
    v2: Layout,
    c1: float,
    c2: float,
    rng: np.random.Generator,
) -> Layout:
    """Fusion crossover of two parents with positive costs ``c1`` and ``c2``."""
    if not (c1 > 0 and c2 > 0):
        raise InvalidParameterError("Crossover costs must be positive")
    return cross_with_probability(v1, v2, c2 / (c1 + c2), rng)


def mutate(
    child: Layout,
    v1: Layout,
    v2: Layout,
    rng: np.random.Generator,
) -> Layout:
    """Flip one bit chosen uniformly among the positions where the parents agree."""
    shared = np.flatnonzero(v1.x == v2.x)
    if shared.size == 0:
        return child
    bits = child.mutable()
    index = int(shared[rng.integers(shared.size)])
    bits[index] = not bits[index]
    return Layout(bits)


def replacement_index(population: Population, rng: np.random.Generator) -> int:
    """Uniform member strictly worse than the mean, else the worst member."""
    values = population.objectives
    worse = np.flatnonzero(values > values.mean())
    if worse.size == 0:
        return int(np.argmax(values))
    return int(worse[rng.integers(worse.size)])


class GeneticSolver:
    """Runs the evolution loop and publishes its progress."""

    def __init__(
        self,
        params: GAParams,
        event_publisher: Optional[EventPublisher] = None,
    ) -> None:
        """
        Initialize the solver.

        Args:
            params: GA parameters
            event_publisher: Receiver of progress events
        """
        self._params = params
        self._event_publisher = event_publisher
        self._run_id = uuid.uuid4()

    def _publish(self, event_cls: type, **data: object) -> None:
        if self._event_publisher is None:
            return
        self._event_publisher.publish(
            event_cls(
                event_id=uuid.uuid4(),
                event_type=event_cls.__name__,
                aggregate_id=self._run_id,
                **data,
            ),
        )

    def seed(self, p: CoverProblem, rng: np.random.Generator) -> Population:
        """Initial population as configured."""
        params = self._params
        population = seed_population(
            p,
            params.population_size,
            params.seeding,
            rng,
            params.elite_k,
            params.stall_factor,
        )
        self._publish(
            PopulationSeededEvent,
            size=len(population),
            requested=params.population_size,
            best_objective=population.best_objective,
            mean_objective=population.mean_objective,
        )
        return population

    def _child(
        self,
        p: CoverProblem,
        population: Population,
        rng: np.random.Generator,
    ) -> Layout:
        params = self._params
        v1, v2 = binary_tournament(population, params.tournament_size, rng)
        p_c = crossover_probability(
            population.objective_of(v1),
            population.objective_of(v2),
            population.best_objective,
            params.literal_crossover,
        )
        child = cross_with_probability(v1, v2, p_c, rng)
        child = mutate(child, v1, v2, rng)
        return repair(p, child)

    def evolve(
        self,
        p: CoverProblem,
        population: Population,
        rng: np.random.Generator,
    ) -> Population:
        """Evolve ``population`` in place until enough children were accepted."""
        params = self._params
        if len(population) < 2:
            logger.warning(
                "Population of %d cannot be evolved, returning it unchanged",
                len(population),
            )
            return population

        accepted = rejected = streak = 0
        best = population.best_objective
        while accepted < params.iterations:
            child = self._child(p, population, rng)
            if child in population:
                rejected += 1
                streak += 1
                if streak >= params.stall_limit:
                    logger.warning(
                        "Evolution stalled after %d duplicate children in a row",
                        streak,
                    )
                    self._publish(
                        EvolutionStalledEvent,
                        accepted=accepted,
                        rejected_in_a_row=streak,
                    )
                    break
                continue
            streak = 0
            value = objective(p, child)
            population.replace(replacement_index(population, rng), child, value)
            accepted += 1
            if value < best:
                best = value
                self._publish(
                    BestLayoutImprovedEvent,
                    accepted=accepted,
                    best_objective=value,
                    station_count=child.station_count,
                )
            if params.progress_every and accepted % params.progress_every == 0:
                logger.debug(
                    "%d children accepted, best %.6g, mean %.6g",
                    accepted,
                    population.best_objective,
                    population.mean_objective,
                )

        self._publish(
            EvolutionCompletedEvent,
            accepted=accepted,
            rejected=rejected,
            best_objective=population.best_objective,
            mean_objective=population.mean_objective,
        )
        return population


def run_ga(
    p: CoverProblem,
    params: GAParams,
    rng: np.random.Generator,
    event_publisher: Optional[EventPublisher] = None,
    initial: Optional[Population] = None,
) -> Population:
    """Seed (unless ``initial`` is given) and evolve a population."""
    solver = GeneticSolver(params, event_publisher)
    population = initial if initial is not None else solver.seed(p, rng)
    return solver.evolve(p, population, rng)

