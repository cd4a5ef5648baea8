"""Linear battery depletion model."""

from dataclasses import dataclass


@dataclass(frozen=True)
class BatteryParams:
    """Depletion rate ``c`` (per km) and initial charge fraction ``u0``.

    The default rate corresponds to a 150 km range on a full battery.
    """

    c: float = 1.0 / 150.0
    u0: float = 1.0

    def __post_init__(self) -> None:
        """Validate the model parameters."""
        if not self.c > 0:
            raise ValueError("Depletion rate must be positive")
        if not 0 <= self.u0 <= 1:
            raise ValueError("Initial charge must be in [0, 1]")

    @property
    def range_km(self) -> float:
        """Distance after which the battery is empty."""
        return self.u0 / self.c


def battery_level(params: BatteryParams, distance_km: float) -> float:
    """Charge fraction left after driving ``distance_km``, floored at zero."""
    if distance_km < 0:
        raise ValueError("Distance must be non-negative")
    return max(params.u0 - params.c * distance_km, 0.0)
