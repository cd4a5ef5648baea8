"""The ``sweep`` command: a layout under varying charging thresholds."""

import argparse

from src.cli.dependencies import (
    get_header,
    get_jobs,
    get_layout_repository,
    get_metrics_repository,
    get_trace_repository,
)
from src.cli.flags import add_layout, add_output_dir, add_traces, value_list
from src.mobility.application.services.trace_service import TracePipelineService
from src.placement.application.services.evaluation_service import parameter_sweep
from src.settings import RunConfig


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the command and its flags."""
    parser = subparsers.add_parser(
        "sweep",
        help="sweep the charging thresholds",
        description="Write sweep.csv and sweep.jsonl, one row per threshold pair.",
    )
    add_output_dir(parser)
    add_traces(parser)
    add_layout(parser)
    parser.add_argument(
        "--tau-values",
        dest="sweep.tau_values_s",
        type=value_list(int),
        help="comma-separated minimum stays in seconds",
    )
    parser.add_argument(
        "--l-values",
        dest="sweep.l_values_km",
        type=value_list(float),
        help="comma-separated distance thresholds in km",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> None:
    """Rebuild the demand per threshold pair and persist the table."""
    grid = config.grid.to_spec()
    params = config.pipeline.to_params()
    jobs = get_jobs(args)
    service = TracePipelineService(get_trace_repository(config), grid, params, jobs)
    traces, _summary = service.load_traces()
    rows = parameter_sweep(
        get_layout_repository(config).load(),
        traces,
        grid,
        params,
        config.sweep.tau_values_s,
        config.sweep.l_values_km,
        jobs,
    )
    get_metrics_repository(config).save_table("sweep", rows, get_header(config, None))
