"""Command registration."""

import argparse

from src.cli.commands import demand, evaluate, generate, solve, sweep

COMMANDS = (generate, demand, solve, evaluate, sweep)


def include_commands(subparsers: argparse._SubParsersAction) -> None:
    """Register every command, in pipeline order."""
    for command in COMMANDS:
        command.register(subparsers)
