"""
Logging configuration and setup

Console and rotating file handlers for the 'ordinaryplanes' logger. Console
output goes to stderr because stdout carries JSON and table reports.
"""

import logging
import sys
from pathlib import Path
from typing import Optional
from logging.handlers import RotatingFileHandler


class ColoredFormatter(logging.Formatter):
    """
    Custom formatter that adds colors to console output
    """

    # ANSI color codes
    COLORS = {
        'DEBUG': '\033[36m',     # Cyan
        'INFO': '\033[32m',      # Green
        'WARNING': '\033[33m',   # Yellow
        'ERROR': '\033[31m',     # Red
        'CRITICAL': '\033[35m',  # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.COLORS['RESET']}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


def setup_logging(
    log_level: str = 'INFO',
    log_file: Optional[str] = None,
    verbose: bool = False,
    quiet: bool = False
) -> logging.Logger:
    """
    Setup logging configuration

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional path to log file
        verbose: Enable verbose output (DEBUG level)
        quiet: Suppress console output except errors

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger('ordinaryplanes')
    logger.handlers.clear()

    if verbose:
        logger.setLevel(logging.DEBUG)
    elif quiet:
        logger.setLevel(logging.ERROR)
    else:
        logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logger.level)
    console_format = '%(levelname)s: %(message)s'
    if sys.stderr.isatty():
        console_handler.setFormatter(ColoredFormatter(console_format))
    else:
        console_handler.setFormatter(logging.Formatter(console_format))
    logger.addHandler(console_handler)

    if log_file:
        try:
            log_path = Path(log_file).expanduser()
            log_path.parent.mkdir(parents=True, exist_ok=True)

            # Rotate at 10MB, keep 5 backups
            file_handler = RotatingFileHandler(
                log_path,
                maxBytes=10 * 1024 * 1024,
                backupCount=5
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            ))
            logger.addHandler(file_handler)

            # The file always records everything
            if logger.level > logging.DEBUG:
                console_handler.setLevel(logger.level)
                logger.setLevel(logging.DEBUG)

            logger.debug(f"Logging to file: {log_path}")

        except OSError as e:
            logger.error(f"Could not setup file logging: {e}")

    logger.propagate = False

    return logger


def log_system_info(workers: Optional[int] = None):
    """Log platform and library versions for debugging"""
    import os
    import platform

    import numpy

    logger = logging.getLogger('ordinaryplanes')

    logger.debug("=" * 50)
    logger.debug("System Information")
    logger.debug("=" * 50)
    logger.debug(f"Platform: {platform.system()} {platform.release()}")
    logger.debug(f"Python: {platform.python_version()}")
    logger.debug(f"numpy: {numpy.__version__}")
    logger.debug(f"CPU cores: {os.cpu_count()}")
    if workers is not None:
        logger.debug(f"Enumeration workers: {workers}")
    logger.debug(f"Working Directory: {os.getcwd()}")
    logger.debug("=" * 50)


def log_error_with_context(
    error: Exception,
    context: str,
    source: Optional[str] = None
):
    """
    Log error with additional context

    Args:
        error: Exception that occurred
        context: Description of what was being attempted
        source: Optional input file that caused the error
    """
    logger = logging.getLogger('ordinaryplanes')

    logger.error(f"{context}: {type(error).__name__} - {error}")

    witness = getattr(error, 'witness', None)
    if witness is not None:
        logger.error(f"  Witness points: {list(witness)}")

    if source:
        logger.error(f"  Input file: {source}")

    logger.debug("Exception details:", exc_info=True)
