"""Command line entry point.

This is the main entry point of the rsumset tool. It:
1. Configures structured logging on stderr (JSON or console based on debug mode)
2. Parses the command line and runs the selected subcommand
3. Exits with 0 on success, 1 on usage or internal errors, 2 on violations
"""

import logging
import sys
from typing import Optional

import structlog

from restricted_sumsets.cli import dispatch
from restricted_sumsets.config import get_settings


# ===== LOGGING CONFIGURATION =====
def configure_logging() -> None:
    """Set up structlog on top of stdlib logging, writing to stderr.

    stdout carries only command output, so reports stay byte-identical
    whatever the log level.
    """
    settings = get_settings()
    level = logging.DEBUG if settings.debug else getattr(logging, settings.log_level)
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)
    structlog.configure(
        processors=[
            # Filter logs by level (debug, info, error, etc.)
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            # Human-readable console output in debug mode, JSON lines otherwise
            structlog.dev.ConsoleRenderer() if settings.debug else structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def main(argv: Optional[list[str]] = None) -> int:
    configure_logging()
    return dispatch(argv)


def run() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
