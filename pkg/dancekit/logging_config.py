"""
DANCEKIT Structured Logging Configuration

Provides centralized logging with an optional JSON format and a run id that
ties together every log line emitted during one census run.

Usage:
    from dancekit.logging_config import get_logger

    logger = get_logger(__name__)
    logger.info("Search finished", extra={"crossings": 8, "dancers": 3})

Configuration:
    LOG_LEVEL environment variable (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    LOG_FORMAT environment variable (json or text, default: text)

Handlers write to stderr; stdout is reserved for command results.

Version: 1.0.0
"""

import logging
import os
import sys
from contextlib import contextmanager
from typing import Iterator, Optional

from pythonjsonlogger import jsonlogger

# Run id of the census run in progress; each worker re-enters it per job
_run_id: Optional[str] = None


class RunIdFilter(logging.Filter):
    """Add the current run id to log records."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = _run_id or "N/A"
        return True


def get_log_level(default: str = 'WARNING') -> int:
    """Get log level from environment variable or the given default."""
    level_name = os.getenv('LOG_LEVEL', default).upper()
    return getattr(logging, level_name, logging.WARNING)


def get_log_format() -> str:
    """Get log format from environment variable (json or text)."""
    return os.getenv('LOG_FORMAT', 'text').lower()


def setup_json_handler(level: int = logging.INFO) -> logging.Handler:
    """
    Create a JSON log handler.

    Args:
        level: Logging level

    Returns:
        logging.Handler configured for JSON output
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)

    formatter = jsonlogger.JsonFormatter(
        '%(asctime)s %(name)s %(levelname)s %(message)s %(run_id)s',
        rename_fields={
            'asctime': 'timestamp',
            'name': 'logger',
            'levelname': 'level',
        }
    )

    handler.setFormatter(formatter)
    handler.addFilter(RunIdFilter())
    return handler


def setup_text_handler(level: int = logging.INFO) -> logging.Handler:
    """
    Create a text log handler.

    Args:
        level: Logging level

    Returns:
        logging.Handler configured for text output
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    handler.setFormatter(formatter)
    handler.addFilter(RunIdFilter())
    return handler


def get_logger(name: str, level: Optional[int] = None) -> logging.Logger:
    """
    Get a configured logger instance.

    Every dancekit module logger hangs below the ``dancekit`` logger, which
    owns the single handler; configuring it twice is a no-op.

    Args:
        name: Logger name (usually __name__)
        level: Optional log level override

    Returns:
        logging.Logger instance
    """
    root = logging.getLogger('dancekit')

    if not root.handlers:
        log_level = level or get_log_level()
        if get_log_format() == 'json':
            handler = setup_json_handler(log_level)
        else:
            handler = setup_text_handler(log_level)

        root.addHandler(handler)
        root.setLevel(log_level)
        root.propagate = False

    return logging.getLogger(name)


def set_log_level(level: int) -> None:
    """Change the level of the dancekit logger and its handlers."""
    root = logging.getLogger('dancekit')
    root.setLevel(level)
    for handler in root.handlers:
        handler.setLevel(level)


@contextmanager
def run_context(run_id: str) -> Iterator[None]:
    """
    Context manager for setting the run id.

    Usage:
        with run_context("census-8_15"):
            logger.info("Analyzing")  # carries run_id="census-8_15"

    Args:
        run_id: Identifier for the run being traced
    """
    global _run_id
    old_id = _run_id
    _run_id = run_id
    try:
        yield
    finally:
        _run_id = old_id


def get_run_id() -> Optional[str]:
    """Get current run id."""
    return _run_id
