"""Flags shared by several commands.

Destinations are ``section.key`` paths into the run configuration; a flag that
is not given stays None and leaves the run file value alone.
"""

import argparse
from pathlib import Path
from typing import Callable, List, TypeVar

T = TypeVar("T")


def value_list(convert: Callable[[str], T]) -> Callable[[str], List[T]]:
    """Argparse type for comma-separated values."""

    def parse(text: str) -> List[T]:
        items = [item.strip() for item in text.split(",") if item.strip()]
        if not items:
            raise argparse.ArgumentTypeError("expected at least one value")
        try:
            return [convert(item) for item in items]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    return parse


def add_output_dir(parser: argparse.ArgumentParser) -> None:
    """--output-dir."""
    parser.add_argument(
        "--output-dir",
        dest="paths.output_dir",
        type=Path,
        help="directory receiving the artifacts (created when missing)",
    )


def add_traces(parser: argparse.ArgumentParser) -> None:
    """--traces."""
    parser.add_argument(
        "--traces",
        dest="paths.traces",
        type=Path,
        help="trace file, <output-dir>/traces.csv by default",
    )


def add_demand(parser: argparse.ArgumentParser, help_text: str) -> None:
    """--demand."""
    parser.add_argument("--demand", dest="paths.demand", type=Path, help=help_text)


def add_layout(parser: argparse.ArgumentParser) -> None:
    """--layout."""
    parser.add_argument(
        "--layout",
        dest="paths.layout",
        type=Path,
        help="layout file, <output-dir>/layout.txt by default",
    )


def add_thresholds(parser: argparse.ArgumentParser) -> None:
    """Charging thresholds and study window length."""
    parser.add_argument(
        "--tau-min",
        dest="pipeline.tau_min_s",
        type=int,
        help="minimum charging stay in seconds",
    )
    parser.add_argument(
        "--l-min",
        dest="pipeline.l_min_km",
        type=float,
        help="distance in km after which a driver needs to charge",
    )
    parser.add_argument(
        "--days",
        dest="pipeline.days",
        type=int,
        help="length of the study window in days",
    )
