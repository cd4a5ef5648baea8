"""Wiring of configuration, repositories and publishers for the commands."""

import argparse
from pathlib import Path
from typing import Any, Dict, Optional

from src.mobility.domain.repositories.demand_repository import (
    DemandRepository,
    LedgerRepository,
)
from src.mobility.domain.repositories.trace_repository import TraceRepository
from src.mobility.infrastructure.repositories.filesystem.demand_repository import (
    FileDemandRepository,
)
from src.mobility.infrastructure.repositories.filesystem.ledger_repository import (
    FileLedgerRepository,
)
from src.mobility.infrastructure.repositories.filesystem.trace_repository import (
    FileTraceRepository,
)
from src.placement.domain.event_publisher.event_publisher import EventPublisher
from src.placement.domain.repositories.layout_repository import (
    LayoutRepository,
    MetricsRepository,
)
from src.placement.infrastructure.repositories.filesystem.layout_repository import (
    FileLayoutRepository,
)
from src.placement.infrastructure.repositories.filesystem.metrics_repository import (
    FileMetricsRepository,
)
from src.settings import RunConfig, load_run_config, settings
from src.shared.event_publisher.console_publisher import ConsoleEventPublisher
from src.shared.provenance import Provenance

# Flags override the run file through argparse destinations named "section.key".
SECTION_SEPARATOR = "."


def collect_overrides(args: argparse.Namespace) -> Dict[str, Dict[str, Any]]:
    """Nested section dictionaries of the flags that were given."""
    overrides: Dict[str, Dict[str, Any]] = {}
    for dest, value in vars(args).items():
        if value is None or SECTION_SEPARATOR not in dest:
            continue
        section, key = dest.split(SECTION_SEPARATOR, 1)
        overrides.setdefault(section, {})[key] = value
    return overrides


def get_run_config(args: argparse.Namespace) -> RunConfig:
    """Run configuration from the run file, the environment and the flags."""
    path: Optional[Path] = args.config or settings.config_file
    return load_run_config(path, **collect_overrides(args))


def get_jobs(args: argparse.Namespace) -> int:
    """Worker processes requested by flag or environment."""
    return args.jobs or settings.jobs


def get_header(config: RunConfig, seed: Optional[int]) -> Dict[str, str]:
    """Provenance header entries for the artifacts of a run."""
    return Provenance.for_config(config.canonical_json(), seed).header()


def get_trace_repository(config: RunConfig) -> TraceRepository:
    """Get trace repository implementation."""
    pipeline = config.pipeline
    return FileTraceRepository(
        config.paths.traces_file,
        grid=config.grid.to_spec(),
        window=pipeline.to_window(),
        coordinates=pipeline.coordinates,
        reference=pipeline.reference,
        max_error_ratio=pipeline.max_error_ratio,
    )


def get_ledger_repository(config: RunConfig) -> LedgerRepository:
    """Get ledger repository implementation."""
    return FileLedgerRepository(config.paths.ledger_file)


def get_demand_repository(path: Path) -> DemandRepository:
    """Get demand repository implementation."""
    return FileDemandRepository(path)


def get_layout_repository(config: RunConfig) -> LayoutRepository:
    """Get layout repository implementation."""
    return FileLayoutRepository(config.paths.layout_file)


def get_metrics_repository(config: RunConfig) -> MetricsRepository:
    """Get metrics repository implementation."""
    return FileMetricsRepository(config.paths.output_dir)


def get_event_publisher() -> EventPublisher:
    """Get event publisher implementation."""
    return ConsoleEventPublisher()
