"""The ``evaluate`` command: a layout against a demand matrix."""

import argparse
import logging
from pathlib import Path

from src.cli.dependencies import (
    get_demand_repository,
    get_header,
    get_layout_repository,
    get_metrics_repository,
)
from src.cli.flags import add_layout, add_output_dir
from src.placement.application.services.evaluation_service import cross_evaluate
from src.settings import RunConfig

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the command and its flags."""
    parser = subparsers.add_parser(
        "evaluate",
        help="evaluate a layout on some demand",
        description="Write evaluation.csv and evaluation.jsonl.",
    )
    add_output_dir(parser)
    add_layout(parser)
    parser.add_argument(
        "--demand",
        dest="paths.evaluate_demand",
        type=Path,
        help="demand to evaluate against, the solve-time demand by default",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> None:
    """Evaluate and persist one metrics row."""
    demand_file = config.paths.evaluate_demand_file
    layout = get_layout_repository(config).load()
    demand = get_demand_repository(demand_file).load()
    metrics = cross_evaluate(layout, demand, config.grid.to_spec(), demand_file.stem)
    get_metrics_repository(config).save_table(
        "evaluation",
        [metrics],
        get_header(config, None),
    )
    logger.info(
        "Average distance %.4f km, %.1f%% of the demand within %d hops",
        metrics.avg_distance_km,
        100 * (metrics.coverage_ratio or 0.0),
        layout.h,
    )
