"""Command-line application setup."""

import argparse
from pathlib import Path

from src.cli.router import include_commands
from src.settings import LogLevel
from src.shared.provenance import PACKAGE_NAME, package_version


def get_app() -> argparse.ArgumentParser:
    """
    Get the argument parser.

    This is the main constructor of the command line.

    :return: parser with one subcommand per pipeline stage.
    """
    parser = argparse.ArgumentParser(
        prog="ev-placement",
        description="Place EV fast-charging stations from mobility traces.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"{PACKAGE_NAME} {package_version()}",
    )
    parser.add_argument("--config", type=Path, help="TOML run configuration")
    parser.add_argument(
        "--log-level",
        type=LogLevel,
        choices=list(LogLevel),
        help="log level, EV_PLACEMENT_LOG_LEVEL by default",
    )
    parser.add_argument("--jobs", type=int, help="worker processes")

    subparsers = parser.add_subparsers(dest="command", required=True)
    include_commands(subparsers)
    return parser
