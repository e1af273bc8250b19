"""Structured logging configuration using structlog.

This module sets up structlog with JSON or console output. All logs include
standard fields: timestamp, log_level, logger name, message and the application
context, plus whatever keyword context the call site binds.
"""

import logging
import sys
from typing import Any

import structlog
from structlog.types import EventDict, Processor

from src import __version__


def add_app_context(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """Add application-level context to log events.

    Args:
        logger: The logger instance
        method_name: The name of the log method called
        event_dict: The event dictionary

    Returns:
        Modified event dictionary with app context
    """
    event_dict["app"] = "tethertraj"
    event_dict["version"] = __version__
    return event_dict


def configure_logging(log_level: str = "INFO", log_format: str = "console") -> None:
    """Configure structured logging with structlog.

    Logs are written to stderr so that command output on stdout (reports)
    stays machine readable.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: Output format ("json" for batch runs, "console" for interactive use)
    """
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, log_level.upper()),
        force=True,
    )

    common_processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        add_app_context,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]

    renderer: Processor
    if log_format == "json":
        renderer = structlog.processors.JSONRenderer()
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())

    structlog.configure(
        processors=[*common_processors, renderer],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a configured logger instance for a module.

    Args:
        name: Logger name (typically __name__ of the calling module)

    Returns:
        Configured structlog logger instance

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("Path found", waypoints=4, length=5.2)
    """
    return structlog.get_logger(name)  # type: ignore[no-any-return]


# Standard log fields:
# - timestamp: ISO 8601 timestamp (added by TimeStamper)
# - level: DEBUG, INFO, WARNING, ERROR, CRITICAL (added by add_log_level)
# - logger: Logger name (added by add_logger_name)
# - event: Log message
# - app / version: added by add_app_context
# - scenario: Scenario name (bound by the CLI for a run)
# - duration_s: Duration in seconds (for timing logs)
