"""
Utilities package
"""

from .config import Config
from .logging import bind_run, setup_logging, get_logger
from .helpers import format_rational, parse_rational, polynomial_to_terms, polynomial_from_terms, input_digest

__all__ = [
    'Config',
    'bind_run',
    'setup_logging',
    'get_logger',
    'format_rational',
    'parse_rational',
    'polynomial_to_terms',
    'polynomial_from_terms',
    'input_digest'
]
