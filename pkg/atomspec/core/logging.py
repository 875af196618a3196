"""Logging configuration."""

import logging
import sys

import structlog
from structlog.stdlib import LoggerFactory

from atomspec.core.config import settings


def setup_logging(level: str | None = None, json: bool | None = None) -> None:
    """Set up structured logging on stderr."""
    level_name = (level or settings.LOG_LEVEL).upper()
    render_json = settings.LOG_JSON if json is None else json

    # Configure standard library logging
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level_name, logging.WARNING),
        force=True,
    )

    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if render_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    # Configure structlog
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a structured logger instance."""
    return structlog.get_logger(name)
