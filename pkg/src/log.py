"""Logging setup for the mackeykit package and its CLI."""
import logging
import sys
from typing import Optional

from pythonjsonlogger.json import JsonFormatter
from rich.console import Console
from rich.logging import RichHandler

from src.config import get_config

PACKAGE_LOGGER = "src"


def configure_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> logging.Logger:
    """
    Configure the package logger once per process.

    Args:
        level: Log level name. If None, uses the configured level.
        fmt: "text" for rich console output, "json" for JSON records.
            If None, uses the configured format.

    Returns:
        The configured package logger
    """
    config = get_config().logging
    level = (level or config.level).upper()
    fmt = fmt or config.format

    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    if fmt == "json":
        handler: logging.Handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s")
        )
    elif fmt == "text":
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    else:
        raise ValueError(f"Unknown log format: {fmt}")

    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
