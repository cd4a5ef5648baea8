"""DTOs for the placement context."""

from typing import List, Optional

from pydantic import BaseModel, Field


class PlacedLayoutDTO(BaseModel):
    """A solved layout in full-grid terms, as written to ``layout.txt``."""

    stations: List[int] = Field(default_factory=list)
    h: int = Field(..., ge=0)
    delta: float = Field(..., gt=0, le=1)
    w0: float = Field(0.0, ge=0)
    objective: float = 0.0

    @property
    def station_count(self) -> int:
        """Number of stations."""
        return len(self.stations)


class LayoutMetricsDTO(BaseModel):
    """Demand-weighted distance to the nearest station, one row per layout."""

    label: str = ""
    avg_distance_km: float = Field(..., ge=0)
    distance_variance_km2: float = Field(..., ge=0)
    station_count: int = Field(..., ge=0)
    objective: float
    h: int
    delta: float
    w0: float
    # Share of demand within h hops of a station; reported by cross evaluation.
    coverage_ratio: Optional[float] = Field(None, ge=0, le=1)


class SweepRowDTO(BaseModel):
    """Metrics of a fixed layout under one pair of charging thresholds."""

    tau_min_s: int
    l_min_km: float
    total_demand: int
    station_count: int
    avg_distance_km: Optional[float] = None
    distance_variance_km2: Optional[float] = None
    coverage_ratio: Optional[float] = None


class PopulationComparisonDTO(BaseModel):
    """Average-distance improvement of the evolved over the initial population.

    Improvements are relative: (initial - final) / initial, 0 when initial is 0.
    """

    initial_size: int
    final_size: int
    initial_best_km: float
    final_best_km: float
    initial_mean_km: float
    final_mean_km: float
    best_improvement: float
    mean_improvement: float
    initial_mean_stations: float
    final_mean_stations: float
