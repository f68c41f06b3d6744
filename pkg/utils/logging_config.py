"""
Logging Configuration
One 'arcade' logger tree for constructions, validators, solvers and grids
"""

import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from algebra.errors import ConfigError

LOG_FILE = "arcade.log"
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def ResolveLevel(level: str) -> int:
    """Numeric level for a name like 'DEBUG'; ConfigError for anything else"""
    value = logging.getLevelName(str(level).upper())
    if not isinstance(value, int):
        raise ConfigError(f"unknown logging level '{level}'")
    return value


def setup_logging(
    level: str = "INFO",
    log_to_file: bool = True,
    log_to_console: bool = False,
    log_dir: Optional[str] = None
) -> logging.Logger:
    """
    Configure the 'arcade' logger

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_to_file: Rotating file in log_dir
        log_to_console: Stream handler on stderr
        log_dir: Directory for log files (default: ~/.arcade/logs/)

    Returns:
        The 'arcade' logger; child loggers propagate to it
    """
    numeric = ResolveLevel(level)
    logger = logging.getLogger('arcade')
    logger.setLevel(numeric)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    handlers = []
    if log_to_console:
        handlers.append(logging.StreamHandler())
    if log_to_file:
        log_dir = log_dir or str(Path.home() / ".arcade" / "logs")
        os.makedirs(log_dir, exist_ok=True)
        # 10MB per file, 5 backups
        handlers.append(RotatingFileHandler(os.path.join(log_dir, LOG_FILE), maxBytes=10 * 1024 * 1024,
                                            backupCount=5, encoding='utf-8'))

    formatter = logging.Formatter(LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')
    for handler in handlers:
        handler.setLevel(numeric)
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """'arcade' or its child 'arcade.<name>'"""
    if name is None:
        return logging.getLogger('arcade')
    return logging.getLogger(f'arcade.{name}')


def init_default_logger(config: Optional[dict] = None) -> logging.Logger:
    """Configure logging from the 'logging' section of a loaded config"""
    logging_config = (config or {}).get('logging', {})
    return setup_logging(
        level=logging_config.get('level', 'INFO'),
        log_to_file=logging_config.get('file_output', True),
        log_to_console=logging_config.get('console_output', False)
    )


def log_solve_start(game: str, states_cap: int, workers: int = 1):
    get_logger('games').info(f"Solving {game} (state cap {states_cap}, {workers} worker(s))")


def log_solve_complete(game: str, winner: str, states: int, duration: float):
    rate = states / duration if duration > 0 else float(states)
    get_logger('games').info(
        f"Solved {game}: winner {winner}, {states} state(s) "
        f"in {duration:.2f}s ({rate:.0f} states/sec)"
    )


def log_cap_usage(what: str, used: int, cap: int):
    """DEBUG line with how much of a cap a search used; WARNING above 80%"""
    logger = get_logger('caps')
    share = used / cap if cap else 0.0
    message = f"{what}: {used} of {cap} ({share:.0%})"
    if share > 0.8:
        logger.warning(message)
    else:
        logger.debug(message)


def log_enumeration(what: str, count: int, duration: float):
    get_logger('algebra').debug(f"{what}: {count} found in {duration:.2f}s")


def log_validation(subject: str, violations: int, duration: float):
    status = "valid" if violations == 0 else f"{violations} violation(s)"
    get_logger('algebra').info(f"Validated {subject}: {status} in {duration:.2f}s")


def log_error(operation: str, error: Exception):
    """Error with traceback, on the root 'arcade' logger"""
    get_logger().error(f"Error during {operation}: {error}", exc_info=True)
