import logging
from typing import Optional

import structlog
from rich.console import Console
from rich.logging import RichHandler

from app.constants import VERBOSITY


def level_for(verbosity: int) -> str:
    return VERBOSITY[min(max(verbosity, 0), len(VERBOSITY) - 1)]


def configure(verbosity: int = 0, log_file: Optional[str] = None) -> None:
    """
    Route structlog through the stdlib root logger.

    Parameters
    ----------
    verbosity
    :count of -v flags, 0 is warnings only
    log_file
    :optional path receiving every record at DEBUG
    """
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )

    # stdout carries DOT, JSON and reports only
    rich_handler = RichHandler(console=Console(stderr=True), show_path=False)
    rich_handler.setLevel(level_for(verbosity))
    handlers: list[logging.Handler] = [rich_handler]
    if log_file is not None:
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        handlers.append(file_handler)

    root = logging.getLogger()
    root.handlers = handlers
    root.setLevel(logging.DEBUG if log_file is not None else level_for(verbosity))
