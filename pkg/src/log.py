import logging
import sys
from typing import Optional, Union

from loguru import logger

from src.settings import LogLevel, settings

LOG_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | "
    "<level>{level: <8}</level> | "
    "<magenta>{extra[command]}</magenta> | "
    "<cyan>{name}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
)


class InterceptHandler(logging.Handler):
    """
    Routes standard library records to loguru.

    Every module logs through ``logging.getLogger(__name__)``; this handler
    keeps the original caller so loguru reports the right module and line.
    """

    def emit(self, record: logging.LogRecord) -> None:  # pragma: no cover
        """
        Forward a record to loguru.

        :param record: record to log.
        """
        try:
            level: Union[str, int] = logger.level(record.levelname).name
        except ValueError:
            level = record.levelno

        frame, depth = logging.currentframe(), 2
        while frame.f_code.co_filename == logging.__file__:
            frame = frame.f_back  # type: ignore
            depth += 1

        logger.opt(depth=depth, exception=record.exc_info).log(
            level,
            record.getMessage(),
        )


def configure_logging(
    level: Optional[LogLevel] = None,
    command: str = "-",
) -> None:  # pragma: no cover
    """
    Send every log record to stderr, tagged with the running subcommand.

    Artifacts may be written to stdout, so logs never go there.

    :param level: minimum level, the configured one by default.
    :param command: subcommand shown in each line.
    """
    logging.basicConfig(handlers=[InterceptHandler()], level=logging.NOTSET, force=True)
    logger.remove()
    logger.configure(extra={"command": command})
    logger.add(
        sys.stderr,
        level=(level or settings.log_level).value,
        format=LOG_FORMAT,
        colorize=None,
    )
