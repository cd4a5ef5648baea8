"""The ``generate`` command: synthetic traces and their ground-truth ledger."""

import argparse
import logging

from src.cli.dependencies import (
    get_header,
    get_ledger_repository,
    get_trace_repository,
)
from src.cli.flags import add_output_dir, add_thresholds, add_traces
from src.mobility.application.services.synth_service import SynthService
from src.settings import RunConfig

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    """Add the command and its flags."""
    parser = subparsers.add_parser(
        "generate",
        help="generate a synthetic city",
        description="Write traces.csv and ledger.json for a synthetic city.",
    )
    add_output_dir(parser)
    add_traces(parser)
    add_thresholds(parser)
    parser.add_argument("--n-users", dest="synth.n_users", type=int)
    parser.add_argument("--seed", dest="synth.seed", type=int)
    parser.add_argument("--mode", dest="synth.mode", choices=["dense", "sparse"])
    parser.add_argument("--long-trip-rate", dest="synth.long_trip_rate", type=float)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> None:
    """Generate and persist the synthetic city."""
    synth = config.synth_config()
    service = SynthService(
        trace_repository=get_trace_repository(config),
        ledger_repository=get_ledger_repository(config),
    )
    ledger = service.run(
        synth,
        config.grid.to_spec(),
        config.pipeline.to_window(),
        get_header(config, synth.seed),
    )
    logger.info(
        "Wrote %s with %d users and %d planted trips",
        config.paths.traces_file,
        len(ledger.homes),
        len(ledger.trips),
    )
