"""Logging for Spectral Filter Lab.

Modules log through children of the ``spectral_filter_lab`` logger and the
CLI attaches handlers to that one logger. Console output goes to stderr so
report JSON written to stdout stays parseable. numpy floating-point
RuntimeWarnings (overflow while training diverges, division by zero on a
degenerate spectrum) are routed through the same handlers, so a --log-file
holds the whole numeric history of a run.
"""

import logging
import os
import sys
from pathlib import Path
from typing import Optional, Union

from spectral_filter_lab.errors import ValidationError

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

ROOT_LOGGER_NAME = "spectral_filter_lab"
WARNINGS_LOGGER_NAME = "py.warnings"
LOG_LEVEL_ENV = "SFL_LOG_LEVEL"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def resolve_level(level: Optional[str] = None) -> int:
    """
    Numeric level for a level name in any case.

    None falls back to SFL_LOG_LEVEL, then INFO.

    Raises:
        ValidationError: INVALID_LOG_LEVEL for a name outside DEBUG..CRITICAL
    """
    source = "argument"
    if level is None:
        level, source = os.getenv(LOG_LEVEL_ENV, "INFO"), LOG_LEVEL_ENV
    name = level.strip().upper()
    if name not in LOG_LEVELS:
        raise ValidationError(
            message=f"Unknown log level '{level}'",
            error_code="INVALID_LOG_LEVEL",
            details={"level": level, "source": source},
            suggestions=[f"Use one of: {', '.join(LOG_LEVELS)}"],
        )
    return logging.getLevelName(name)


def _build_handlers(log_file: Optional[Path], console: bool) -> list[logging.Handler]:
    handlers: list[logging.Handler] = []
    if console:
        handlers.append(logging.StreamHandler(sys.stderr))
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, mode="a", encoding="utf-8"))
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    for handler in handlers:
        handler.setFormatter(formatter)
    return handlers


def setup_logger(
    name: str = ROOT_LOGGER_NAME,
    level: Optional[str] = "INFO",
    log_file: Optional[Union[str, Path]] = None,
    console: bool = True,
) -> logging.Logger:
    """Replace the handlers of logger `name` with a stderr and/or file handler.

    Old handlers are closed, so reconfiguring between runs in one process
    never duplicates output. The logger does not propagate to root.

    Args:
        name: Logger name (default: "spectral_filter_lab")
        level: Level name; None reads SFL_LOG_LEVEL
        log_file: Append logs to this file, creating parent directories
        console: Log to stderr

    Returns:
        The configured logger

    Example:
        >>> logger = setup_logger(level="DEBUG", log_file=Path("out/run.log"))
        >>> logger.debug("Reconstruction error 3e-15")
    """
    numeric = resolve_level(level)
    logger = logging.getLogger(name)
    logger.setLevel(numeric)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    for handler in _build_handlers(Path(log_file) if log_file else None, console):
        handler.setLevel(numeric)
        logger.addHandler(handler)
    logger.propagate = False
    return logger


def get_logger(name: str = ROOT_LOGGER_NAME) -> logging.Logger:
    """Module logger; pass __name__ so it is a child of the package logger."""
    return logging.getLogger(name)


def capture_numeric_warnings(logger: logging.Logger) -> logging.Logger:
    """Send warnings.warn output, numpy RuntimeWarnings included, to logger's handlers."""
    # re-arm: a caller may have swapped warnings.showwarning since the last capture
    logging.captureWarnings(False)
    logging.captureWarnings(True)
    py_warnings = logging.getLogger(WARNINGS_LOGGER_NAME)
    py_warnings.handlers = list(logger.handlers)
    py_warnings.setLevel(logging.WARNING)
    py_warnings.propagate = False
    return py_warnings


def configure_logging(
    level: Optional[str] = None,
    log_file: Optional[Union[str, Path]] = None,
    console: bool = True,
) -> logging.Logger:
    """Configure the package logger for one CLI run.

    Raises:
        ValidationError: INVALID_LOG_LEVEL from the flag or SFL_LOG_LEVEL
    """
    logger = setup_logger(ROOT_LOGGER_NAME, level=level, log_file=log_file, console=console)
    capture_numeric_warnings(logger)
    return logger
