"""
Centralized logging configuration for the wavelet disassembly toolkit.

Console output goes to stderr so that anything a command writes to stdout or
to its output files is never interleaved with log lines.

Example usage:
    >>> from src.logging import get_logger, setup_logging
    >>>
    >>> setup_logging(level="INFO", log_file="results/logs/sweep.log")
    >>> logger = get_logger(__name__)
    >>> logger.info("Segmented 27839 clock-cycle windows")
"""

import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Optional, Union


class LogLevel(str, Enum):
    """Enumeration of available log levels."""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class ColoredFormatter(logging.Formatter):
    """Formatter that colours the level name for terminal output."""

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record):
        """Format log record with a coloured level name."""
        log_color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        reset_color = self.COLORS['RESET']

        # Work on a copy so file handlers sharing the record stay uncoloured
        record = logging.makeLogRecord(record.__dict__)
        record.levelname = f"{log_color}{record.levelname}{reset_color}"

        return super().format(record)


DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _coerce_level(level: Union[str, LogLevel]) -> LogLevel:
    if isinstance(level, LogLevel):
        return level
    return LogLevel(str(level).upper())


def _handler(
    handler: logging.Handler, level: int, formatter: logging.Formatter
) -> logging.Handler:
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def setup_logging(
    level: Union[str, LogLevel] = LogLevel.INFO,
    log_file: Optional[Union[str, Path]] = None,
    log_dir: Optional[Union[str, Path]] = None,
    console: bool = True,
    colored: bool = True,
    format_string: Optional[str] = None,
    date_format: Optional[str] = None,
) -> None:
    """
    Configure global logging settings for the toolkit.

    Sets up the root logger with a stderr console handler and/or a file
    handler. Calling it again replaces the previous handlers, so the CLI can
    reconfigure after the import-time default.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file. If provided, file logging is enabled
        log_dir: Directory for log files; overrides the parent of log_file
        console: Whether to enable console logging (default: True)
        colored: Whether to colour console level names on a TTY (default: True)
        format_string: Custom format string for log messages
        date_format: Custom date format string

    Example:
        >>> setup_logging(level="DEBUG", log_file="results/logs/bench.log")
    """
    numeric_level = getattr(logging, _coerce_level(level).value)
    format_string = format_string or DEFAULT_FORMAT
    date_format = date_format or DEFAULT_DATE_FORMAT

    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        if isinstance(handler, logging.FileHandler):
            handler.close()

    if console:
        formatter_class = ColoredFormatter if colored and sys.stderr.isatty() else logging.Formatter
        root_logger.addHandler(_handler(
            logging.StreamHandler(sys.stderr), numeric_level,
            formatter_class(format_string, datefmt=date_format),
        ))

    if log_file is not None:
        log_path = Path(log_dir) / Path(log_file).name if log_dir else Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        root_logger.addHandler(_handler(
            logging.FileHandler(log_path, mode='a', encoding='utf-8'), numeric_level,
            logging.Formatter(format_string, datefmt=date_format),
        ))
        root_logger.info(f"Logging to file: {log_path}")


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for the specified module.

    Args:
        name: Name of the logger, typically __name__ from the calling module

    Returns:
        Logger instance inheriting the root configuration
    """
    return logging.getLogger(name)


def configure_logger(
    name: str,
    level: Optional[Union[str, LogLevel]] = None,
    handlers: Optional[list] = None,
) -> logging.Logger:
    """
    Configure a specific logger separately from the global configuration.

    Useful to silence or redirect a noisy stage, e.g. per-window debug output
    of a long scale sweep.

    Args:
        name: Name of the logger
        level: Logging level for this specific logger
        handlers: List of custom handlers to attach to this logger

    Returns:
        Configured logger instance

    Example:
        >>> configure_logger('src.analysis.bench', level='WARNING')
    """
    logger = logging.getLogger(name)

    if level is not None:
        logger.setLevel(getattr(logging, _coerce_level(level).value))

    if handlers is not None:
        logger.handlers.clear()
        for handler in handlers:
            logger.addHandler(handler)

    return logger


# Set up a default configuration if logging hasn't been configured yet
if not logging.getLogger().handlers:
    setup_logging(level=LogLevel.INFO, console=True, colored=True)
