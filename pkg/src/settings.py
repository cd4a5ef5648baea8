import enum
from pathlib import Path
from typing import Any, List, Literal, Optional, Tuple, Type

import ujson
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

from src.grid.domain.model.grid import GridSpec
from src.mobility.application.dtos.synth_dtos import SynthConfig
from src.mobility.domain.model.value_objects import (
    SECONDS_PER_DAY,
    NightWindow,
    PipelineParams,
    StudyWindow,
)
from src.placement.domain.model.value_objects import (
    ExactCriterion,
    GAParams,
    SeedingMethod,
    SolverKind,
)

ENV_PREFIX = "EV_PLACEMENT_"


class LogLevel(str, enum.Enum):
    """Possible log levels."""

    NOTSET = "NOTSET"
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    FATAL = "FATAL"


class Settings(BaseSettings):
    """
    Process settings.

    These parameters can be configured
    with environment variables.
    """

    # Current environment
    environment: str = "dev"

    log_level: LogLevel = LogLevel.INFO
    # Worker processes for ingest and multi-seed solver batches
    jobs: int = Field(1, ge=1)
    # Run configuration used when no --config flag is given
    config_file: Optional[Path] = None

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix=ENV_PREFIX,
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridConfig(_Section):
    """Grid keys of the run configuration."""

    origin_x_km: float = 0.0
    origin_y_km: float = 0.0
    cell_size_km: float = Field(0.5, gt=0)
    nx: int = Field(40, ge=1)
    ny: int = Field(40, ge=1)

    def to_spec(self) -> GridSpec:
        """Grid described by this section."""
        return GridSpec(
            origin_x=self.origin_x_km,
            origin_y=self.origin_y_km,
            cell_size=self.cell_size_km,
            nx=self.nx,
            ny=self.ny,
        )


class PipelineConfig(_Section):
    """Trace pipeline and demand keys of the run configuration."""

    window_start: int = Field(0, ge=0)
    days: int = Field(7, ge=1)
    slot_s: int = Field(1800, gt=0)
    tau_min_s: int = Field(1800, ge=0)
    l_min_km: float = Field(100.0, ge=0)
    delta: float = Field(0.25, gt=0, le=1)
    night_start_hour: float = Field(20.0, ge=0, lt=24)
    night_end_hour: float = Field(6.0, ge=0, lt=24)
    utc_offset_s: int = Field(0, ge=-14 * 3600, le=14 * 3600)
    # Days from the window start used for home detection; all days when None.
    home_days: Optional[int] = Field(7, ge=1)
    exclude_homeless: bool = False
    coordinates: Literal["planar", "latlon"] = "planar"
    reference_lat: Optional[float] = Field(None, ge=-90, le=90)
    reference_lon: Optional[float] = Field(None, ge=-180, le=180)
    max_error_ratio: float = Field(0.01, ge=0, le=1)
    # Half-open slot range the weights average over; all slots when None.
    weight_slots: Optional[Tuple[int, int]] = None

    @model_validator(mode="after")
    def check_reference(self) -> "PipelineConfig":
        """Geographic input needs a projection reference."""
        if self.coordinates == "latlon" and (
            self.reference_lat is None or self.reference_lon is None
        ):
            raise ValueError("latlon coordinates need reference_lat and reference_lon")
        if self.weight_slots is not None:
            first, last = self.weight_slots
            if not 0 <= first < last:
                raise ValueError("weight_slots must be a non-empty [first, last) range")
        return self

    def to_window(self) -> StudyWindow:
        """Study window described by this section."""
        return StudyWindow(
            start=self.window_start,
            n_days=self.days,
            slot_duration=self.slot_s,
        )

    def to_params(self) -> PipelineParams:
        """Pipeline parameters described by this section."""
        window = self.to_window()
        home_period = None
        if self.home_days is not None:
            days = min(self.home_days, self.days)
            home_period = (window.start, window.start + days * SECONDS_PER_DAY)
        return PipelineParams(
            window=window,
            tau_min=self.tau_min_s,
            l_min=self.l_min_km,
            night=NightWindow(self.night_start_hour, self.night_end_hour),
            utc_offset=self.utc_offset_s,
            home_period=home_period,
            exclude_homeless=self.exclude_homeless,
        )

    @property
    def reference(self) -> Optional[Tuple[float, float]]:
        """Projection reference as (lat, lon)."""
        if self.reference_lat is None or self.reference_lon is None:
            return None
        return (self.reference_lat, self.reference_lon)

    def slot_list(self, n_slots: int) -> Optional[List[int]]:
        """Slots the weights average over, clipped to the window."""
        if self.weight_slots is None:
            return None
        first, last = self.weight_slots
        return list(range(first, min(last, n_slots)))


class SolverConfig(_Section):
    """Solver keys of the run configuration."""

    kind: SolverKind = SolverKind.GA
    h: int = Field(2, ge=0)
    w0_multiple: float = Field(0.0, ge=0)
    # Station capacity; uncapacitated when None.
    n_c: Optional[int] = Field(None, ge=1)
    duplicate_rows: bool = False
    population: int = Field(1000, ge=2)
    iterations: int = Field(40000, ge=0)
    elite_k: int = Field(5, ge=1)
    tournament_size: int = Field(2, ge=2)
    seed: int = Field(0, ge=0)
    seeding: SeedingMethod = SeedingMethod.STOCHASTIC_CHVATAL
    literal_crossover: bool = False
    stall_factor: int = Field(100, ge=1)
    progress_every: int = Field(1000, ge=0)
    n_runs: int = Field(1, ge=1)
    exact_criterion: ExactCriterion = ExactCriterion.WEIGHT

    def to_ga_params(self) -> GAParams:
        """GA parameters described by this section."""
        return GAParams(
            population_size=self.population,
            iterations=self.iterations,
            elite_k=self.elite_k,
            tournament_size=self.tournament_size,
            seed=self.seed,
            seeding=self.seeding,
            literal_crossover=self.literal_crossover,
            stall_factor=self.stall_factor,
            progress_every=self.progress_every,
        )

    @property
    def seeds(self) -> List[int]:
        """One seed per independent run, counting up from ``seed``."""
        return [self.seed + run for run in range(self.n_runs)]


class SweepConfig(_Section):
    """Threshold values of the parameter sweep."""

    tau_values_s: List[int] = Field(default_factory=lambda: [900, 1800, 3600])
    l_values_km: List[float] = Field(default_factory=lambda: [50.0, 100.0, 150.0])

    @field_validator("tau_values_s", "l_values_km")
    @classmethod
    def not_empty(cls, values: List[Any]) -> List[Any]:
        """Sweep value lists must not be empty."""
        if not values:
            raise ValueError("sweep value lists must not be empty")
        if any(value < 0 for value in values):
            raise ValueError("sweep values must be non-negative")
        return values


class PathsConfig(_Section):
    """Input and output locations; relative defaults live in ``output_dir``."""

    output_dir: Path = Path("out")
    traces: Optional[Path] = None
    demand: Optional[Path] = None
    layout: Optional[Path] = None
    # Demand of another period for cross evaluation; ``demand`` when None.
    evaluate_demand: Optional[Path] = None

    @property
    def traces_file(self) -> Path:
        """Trace file."""
        return self.traces or self.output_dir / "traces.csv"

    @property
    def ledger_file(self) -> Path:
        """Ground-truth ledger written next to the traces."""
        return self.traces_file.with_name("ledger.json")

    @property
    def demand_file(self) -> Path:
        """Demand matrix file."""
        return self.demand or self.output_dir / "demand.csv"

    @property
    def layout_file(self) -> Path:
        """Layout file."""
        return self.layout or self.output_dir / "layout.txt"

    @property
    def evaluate_demand_file(self) -> Path:
        """Demand the layout is evaluated against."""
        return self.evaluate_demand or self.demand_file


class RunConfig(BaseSettings):
    """
    Run configuration.

    Values come from init arguments (command-line flags), then environment
    variables such as ``EV_PLACEMENT_SOLVER__H``, then the TOML run file.
    """

    grid: GridConfig = Field(default_factory=GridConfig)
    pipeline: PipelineConfig = Field(default_factory=PipelineConfig)
    synth: SynthConfig = Field(default_factory=SynthConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    paths: PathsConfig = Field(default_factory=PathsConfig)

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_nested_delimiter="__",
        extra="forbid",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        """Flags, then environment, then the TOML file."""
        return (
            init_settings,
            env_settings,
            TomlConfigSettingsSource(settings_cls),
        )

    def synth_config(self) -> SynthConfig:
        """Synthetic city using the pipeline's charging thresholds."""
        data = self.synth.model_dump()
        data.update(
            tau_min_s=self.pipeline.tau_min_s,
            l_min_km=self.pipeline.l_min_km,
            days=self.synth.days or self.pipeline.days,
        )
        return SynthConfig.model_validate(data)

    def canonical_json(self) -> str:
        """Sorted-key JSON dump hashed into provenance headers."""
        return ujson.dumps(self.model_dump(mode="json"), sort_keys=True)


def load_run_config(path: Optional[Path] = None, **overrides: Any) -> RunConfig:
    """
    Load the run configuration.

    Args:
        path: TOML run file; defaults only when None
        overrides: Section dictionaries from command-line flags

    Returns:
        The merged configuration

    Raises:
        FileNotFoundError: If ``path`` does not exist
    """
    if path is None:
        return RunConfig(**overrides)
    if not Path(path).is_file():
        raise FileNotFoundError(f"Run configuration {path} not found")

    class FileRunConfig(RunConfig):
        model_config = SettingsConfigDict(toml_file=path)

    return FileRunConfig(**overrides)
