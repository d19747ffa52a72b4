"""
Logging configuration for ballcheck
Logs to data/user/app.log, rotates weekly
"""

import logging
import sys
from pathlib import Path
from logging.handlers import TimedRotatingFileHandler

from backend.file_paths import get_app_log_file

LOG_FILE = str(get_app_log_file())
LOG_LEVEL = logging.INFO

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(level=None, log_file=None):
    """
    Configure application logging
    - Logs to app.log in data/user directory
    - Rotates every Monday (weekly)
    - Keeps last 4 weeks of logs
    - Also logs to the console (stderr, stdout carries report output)

    Args:
        level: logging level name or number; defaults to LOG_LEVEL
        log_file: override for the log path (tests point this at tmp_path)

    Returns:
        The configured root logger
    """
    if level is None:
        level = LOG_LEVEL
    elif isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = LOG_LEVEL

    logger = logging.getLogger()
    logger.setLevel(level)

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_path = Path(log_file or LOG_FILE)
    try:
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = TimedRotatingFileHandler(
            str(log_path),
            when='W0',
            interval=1,
            backupCount=4,
            encoding='utf-8'
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

        logger.debug("=" * 80)
        logger.debug("ballcheck starting")
        logger.debug(f"Log file: {log_path.absolute()}")
        logger.debug(f"Frozen mode: {getattr(sys, 'frozen', False)}")
        logger.debug("=" * 80)

    except OSError as e:
        # Continue with console logging only
        logger.error(f"Failed to create log file {log_path}: {e}")

    return logger


def get_logger(name):
    """Get a logger for a specific module"""
    return logging.getLogger(name)


# Auto-setup when imported
if not logging.getLogger().handlers:
    setup_logging()
