"""
Command layer: dispatch, error mapping and the command-line front end
"""

from .commands import COMMANDS, run
from .error_handlers import handle_error
from .cli import main

__all__ = ['COMMANDS', 'run', 'handle_error', 'main']
