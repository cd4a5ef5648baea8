"""Value objects for the placement domain."""

from dataclasses import dataclass, replace
from enum import Enum

from src.placement.domain.exceptions.domain_exceptions import InvalidParameterError


class SolverKind(str, Enum):
    """Available layout solvers."""

    GREEDY = "greedy"
    STOCHASTIC = "stochastic"
    GA = "ga"
    EXACT = "exact"


class SeedingMethod(str, Enum):
    """How the initial GA population is built."""

    STOCHASTIC_CHVATAL = "stochastic-chvatal"
    RANDOM_UNIFORM = "random-uniform"


class ExactCriterion(str, Enum):
    """What the exact solver minimizes first."""

    WEIGHT = "weight"
    STATION_COUNT = "station_count"


@dataclass(frozen=True)
class GAParams:
    """Genetic algorithm parameters.

    ``iterations`` counts accepted children only. ``stall_factor`` times the
    population size bounds consecutive rejected (duplicate) children, both while
    seeding and while evolving.
    """

    population_size: int = 1000
    iterations: int = 40000
    elite_k: int = 5
    tournament_size: int = 2
    seed: int = 0
    seeding: SeedingMethod = SeedingMethod.STOCHASTIC_CHVATAL
    literal_crossover: bool = False
    stall_factor: int = 100
    progress_every: int = 1000

    def __post_init__(self) -> None:
        """Validate parameter ranges."""
        if self.population_size < 2:
            raise InvalidParameterError("population_size must be at least 2")
        if self.iterations < 0:
            raise InvalidParameterError("iterations must be non-negative")
        if self.elite_k < 1:
            raise InvalidParameterError("elite_k must be at least 1")
        if self.tournament_size < 2:
            raise InvalidParameterError("tournament_size must be at least 2")
        if self.stall_factor < 1:
            raise InvalidParameterError("stall_factor must be at least 1")
        if self.progress_every < 0:
            raise InvalidParameterError("progress_every must be non-negative")

    @property
    def stall_limit(self) -> int:
        """Consecutive rejections tolerated before giving up."""
        return self.stall_factor * self.population_size

    def with_seed(self, seed: int) -> "GAParams":
        """Same parameters with another RNG seed."""
        return replace(self, seed=seed)
