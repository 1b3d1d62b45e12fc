"""Logging configuration."""

import logging

import pytest

from src.logging import LogLevel, configure_logger, get_logger, setup_logging


@pytest.fixture(autouse=True)
def restore_root_logger():
    yield
    setup_logging(level=LogLevel.INFO)


def test_file_logging(tmp_path):
    log = tmp_path / "nested" / "run.log"
    setup_logging(level="debug", log_file=log, console=False)
    get_logger("src.analysis.bench").debug("timed gaus1 S=10")
    for handler in logging.getLogger().handlers:
        handler.flush()
    text = log.read_text()
    assert "timed gaus1 S=10" in text
    assert "src.analysis.bench - DEBUG" in text
    assert "\033[" not in text


def test_log_dir_overrides_parent(tmp_path):
    setup_logging(log_file="elsewhere/run.log", log_dir=tmp_path, console=False)
    assert (tmp_path / "run.log").exists()


def test_level_coercion():
    setup_logging(level="warning", console=False)
    assert logging.getLogger().level == logging.WARNING
    setup_logging(level=LogLevel.ERROR, console=False)
    assert logging.getLogger().level == logging.ERROR


def test_invalid_level():
    with pytest.raises(ValueError):
        setup_logging(level="chatty")


def test_setup_replaces_handlers():
    setup_logging()
    setup_logging()
    assert len(logging.getLogger().handlers) == 1


def test_configure_logger():
    handler = logging.NullHandler()
    logger = configure_logger("src.analysis.experiments", level="ERROR", handlers=[handler])
    assert logger.level == logging.ERROR
    assert logger.handlers == [handler]
    configure_logger("src.analysis.experiments", handlers=[]).setLevel(logging.NOTSET)
