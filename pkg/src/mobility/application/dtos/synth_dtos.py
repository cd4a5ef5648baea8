"""Configuration DTOs of the synthetic trace generator."""

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class HomeBlobDTO(BaseModel):
    """Gaussian population blob; position and spread are fractions of the grid."""

    model_config = ConfigDict(extra="forbid")

    x: float = Field(0.5, ge=0, le=1)
    y: float = Field(0.5, ge=0, le=1)
    sigma: float = Field(0.15, gt=0)
    weight: float = Field(1.0, gt=0)


def default_blobs() -> List[HomeBlobDTO]:
    """A dense core with two smaller satellite towns."""
    return [
        HomeBlobDTO(x=0.5, y=0.5, sigma=0.12, weight=3.0),
        HomeBlobDTO(x=0.2, y=0.75, sigma=0.08, weight=1.0),
        HomeBlobDTO(x=0.8, y=0.25, sigma=0.08, weight=1.0),
    ]


class SynthConfig(BaseModel):
    """Synthetic city: users, homes, daily routines and planted long trips."""

    model_config = ConfigDict(extra="forbid")

    n_users: int = Field(100, ge=0)
    # None spans the whole study window.
    days: Optional[int] = Field(None, ge=1)
    seed: int = Field(0, ge=0)
    mode: Literal["dense", "sparse"] = "dense"
    dense_interval_s: int = Field(900, gt=0)
    median_inter_event_min: float = Field(84.0, gt=0)
    inter_event_sigma: float = Field(1.5, gt=0)
    home_blobs: List[HomeBlobDTO] = Field(default_factory=default_blobs, min_length=1)
    long_trip_rate: float = Field(0.1, ge=0, le=1)
    trip_pareto_shape: float = Field(2.5, gt=0)
    trip_pareto_scale: float = Field(0.5, ge=0)
    max_trip_factor: float = Field(3.0, ge=1.05)
    max_legs: int = Field(40, ge=1)
    local_radius_km: float = Field(5.0, ge=0)
    dest_stay_min_s: int = Field(3600, gt=0)
    dest_stay_max_s: int = Field(10800, gt=0)
    speed_kmh: float = Field(60.0, gt=0)
    tau_min_s: int = Field(1800, gt=0, le=21600)
    l_min_km: float = Field(100.0, gt=0)

    @model_validator(mode="after")
    def check_consistency(self) -> "SynthConfig":
        """Local errands must never qualify as long trips."""
        if self.dest_stay_max_s < self.dest_stay_min_s:
            raise ValueError("dest_stay_max_s must not be below dest_stay_min_s")
        if 2 * self.local_radius_km >= self.l_min_km:
            raise ValueError("local_radius_km must stay below half of l_min_km")
        return self
