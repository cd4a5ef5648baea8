"""Value objects for the mobility domain."""

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

SECONDS_PER_DAY = 86400
SECONDS_PER_HOUR = 3600


@dataclass(frozen=True)
class StudyWindow:
    """Observation window split into fixed time slots.

    ``start`` is an epoch second (UTC), normally a local midnight.
    """

    start: int
    n_days: int
    slot_duration: int = 1800

    def __post_init__(self) -> None:
        """Validate window attributes."""
        if self.n_days < 1:
            raise ValueError("Study window must span at least one day")
        if self.slot_duration <= 0:
            raise ValueError("Slot duration must be positive")

    @property
    def end(self) -> int:
        """First epoch second after the window."""
        return self.start + self.n_days * SECONDS_PER_DAY

    @property
    def n_slots(self) -> int:
        """Number of slots covering the window."""
        return math.ceil(self.n_days * SECONDS_PER_DAY / self.slot_duration)

    def contains(self, timestamp: int) -> bool:
        """Whether ``timestamp`` falls inside the window."""
        return self.start <= timestamp < self.end

    def slot_of(self, timestamp: int) -> int:
        """Index of the slot containing ``timestamp``."""
        if not self.contains(timestamp):
            raise ValueError(f"Timestamp {timestamp} is outside the study window")
        return (timestamp - self.start) // self.slot_duration

    def day_slots(self, day: int) -> Tuple[int, int]:
        """Half-open slot range [first, last) of a day of the window."""
        first = (day * SECONDS_PER_DAY) // self.slot_duration
        last = min(self.n_slots, ((day + 1) * SECONDS_PER_DAY) // self.slot_duration)
        return first, last


@dataclass(frozen=True)
class NightWindow:
    """Nightly hours used for home detection, in local time."""

    start_hour: float = 20.0
    end_hour: float = 6.0

    def __post_init__(self) -> None:
        """Validate the hours."""
        for hour in (self.start_hour, self.end_hour):
            if not 0 <= hour < 24:
                raise ValueError("Night window hours must be in [0, 24)")
        if self.start_hour == self.end_hour:
            raise ValueError("Night window must not be empty")

    def overlap(self, t_start: int, t_end: int, utc_offset: int = 0) -> int:
        """Seconds of [t_start, t_end] that fall inside nightly hours."""
        if t_end <= t_start:
            return 0
        local_start = t_start + utc_offset
        local_end = t_end + utc_offset
        begin = int(self.start_hour * SECONDS_PER_HOUR)
        finish = int(self.end_hour * SECONDS_PER_HOUR)
        if finish <= begin:
            finish += SECONDS_PER_DAY

        total = 0
        first_day = local_start // SECONDS_PER_DAY - 1
        last_day = local_end // SECONDS_PER_DAY
        for day in range(first_day, last_day + 1):
            lo = day * SECONDS_PER_DAY + begin
            hi = day * SECONDS_PER_DAY + finish
            total += max(0, min(local_end, hi) - max(local_start, lo))
        return total


@dataclass(frozen=True)
class PipelineParams:
    """Parameters of the trace-to-demand pipeline."""

    window: StudyWindow
    tau_min: int = 1800
    l_min: float = 100.0
    night: NightWindow = field(default_factory=NightWindow)
    utc_offset: int = 0
    # Epoch range used for home detection; None means the whole window.
    home_period: Optional[Tuple[int, int]] = None
    exclude_homeless: bool = False

    def __post_init__(self) -> None:
        """Validate thresholds."""
        if self.tau_min < 0:
            raise ValueError("tau_min must be non-negative")
        if self.l_min < 0:
            raise ValueError("l_min must be non-negative")

    def with_thresholds(self, tau_min: int, l_min: float) -> "PipelineParams":
        """Copy with different charging thresholds."""
        return replace(self, tau_min=tau_min, l_min=l_min)
