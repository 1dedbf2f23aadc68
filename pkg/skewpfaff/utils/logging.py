"""
Logging utilities

Log lines go to stderr (stdout carries the JSON report) and are stamped with the command
being run and its random seed, so a failing randomized check can be replayed from the log.
"""

import logging
import sys
from typing import Optional

ROOT = 'skewpfaff'
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(command)s seed=%(seed)s] %(message)s'


class RunContextFilter(logging.Filter):
    """Adds the current command and seed to every record"""

    def __init__(self):
        super().__init__()
        self.command = '-'
        self.seed: Optional[int] = None

    def filter(self, record: logging.LogRecord) -> bool:
        record.command = self.command
        record.seed = '-' if self.seed is None else self.seed
        return True


_context = RunContextFilter()


def bind_run(command: str, seed: Optional[int] = None) -> None:
    """Stamp subsequent log lines with this run's command and seed"""
    _context.command = command
    _context.seed = seed


def _handler(handler: logging.Handler) -> logging.Handler:
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(_context)
    return handler


def setup_logging(level: str = 'WARNING', log_file: Optional[str] = None) -> logging.Logger:
    """Configure the package logger; replaces any handlers from an earlier call"""
    logger = logging.getLogger(ROOT)
    logger.setLevel(getattr(logging, level.upper()))
    logger.handlers.clear()
    logger.addHandler(_handler(logging.StreamHandler(sys.stderr)))
    if log_file:
        logger.addHandler(_handler(logging.FileHandler(log_file)))
    return logger


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(f'{ROOT}.{name}')
