import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from src.cli.app import get_app
from src.cli.dependencies import get_run_config
from src.log import configure_logging
from src.mobility.domain.exceptions.domain_exceptions import SynthConfigError
from src.shared.exceptions import DomainError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def main(argv: Optional[List[str]] = None) -> int:
    """Entrypoint of the application."""
    args = get_app().parse_args(argv)
    configure_logging(args.log_level, args.command)
    if args.jobs is not None and args.jobs < 1:
        logger.error("--jobs must be at least 1")
        return EXIT_USAGE

    try:
        config = get_run_config(args)
    except (ValueError, FileNotFoundError) as exc:
        logger.error("Invalid run configuration: %s", exc)
        return EXIT_USAGE

    try:
        args.handler(args, config)
    except (ValidationError, SynthConfigError) as exc:
        logger.error("Invalid run configuration: %s", exc)
        return EXIT_USAGE
    except (DomainError, OSError, ValueError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
