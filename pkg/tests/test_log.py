"""Tests for logging setup."""
import logging
import sys

import pytest
from pythonjsonlogger.json import JsonFormatter
from rich.logging import RichHandler

from src.log import PACKAGE_LOGGER, configure_logging


@pytest.fixture(autouse=True)
def restore_package_logger():
    logger = logging.getLogger(PACKAGE_LOGGER)
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield
    logger.handlers = handlers
    logger.setLevel(level)
    logger.propagate = propagate


def test_text_format_uses_rich():
    logger = configure_logging("info", "text")
    assert logger.level == logging.INFO
    assert [type(h) for h in logger.handlers] == [RichHandler]
    assert not logger.propagate


def test_json_format():
    logger = configure_logging("DEBUG", "json")
    assert isinstance(logger.handlers[0].formatter, JsonFormatter)


def test_reconfiguring_replaces_handlers():
    configure_logging("INFO", "text")
    logger = configure_logging("INFO", "json")
    assert len(logger.handlers) == 1


def test_unknown_format():
    with pytest.raises(ValueError):
        configure_logging("INFO", "xml")


def test_module_loggers_are_children():
    configure_logging("WARNING", "text")
    child = logging.getLogger("src.tate.generalized")
    assert child.getEffectiveLevel() == logging.WARNING


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
