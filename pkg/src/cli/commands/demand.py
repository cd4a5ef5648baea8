"""The ``demand`` command: traces to a charging demand matrix."""

import argparse

from src.cli.dependencies import (
    get_demand_repository,
    get_header,
    get_jobs,
    get_trace_repository,
)
from src.cli.flags import add_demand, add_output_dir, add_thresholds, add_traces
from src.mobility.application.services.trace_service import TracePipelineService
from src.settings import RunConfig


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the command and its flags."""
    parser = subparsers.add_parser(
        "demand",
        help="count charging demand",
        description="Write demand.csv and homes.csv from a trace file.",
    )
    add_output_dir(parser)
    add_traces(parser)
    add_demand(parser, "demand file to write, <output-dir>/demand.csv by default")
    add_thresholds(parser)
    parser.add_argument("--slot-s", dest="pipeline.slot_s", type=int)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> None:
    """Ingest the traces and persist demand and homes."""
    service = TracePipelineService(
        trace_repository=get_trace_repository(config),
        grid=config.grid.to_spec(),
        params=config.pipeline.to_params(),
        jobs=get_jobs(args),
    )
    service.run(
        get_demand_repository(config.paths.demand_file),
        get_header(config, None),
    )
