"""
Error handling: exceptions to exit codes and JSON error bodies
"""

import traceback
from typing import Any, Dict, Tuple

from ..utils.errors import InterchangeError, InvalidParameter, SkewPfaffError, UnknownArrow, UnknownLabel
from ..utils.logging import get_logger

logger = get_logger('error_handlers')

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# Input problems the caller can fix by changing the command line or the document
USAGE_ERRORS = (InterchangeError, InvalidParameter, UnknownLabel, UnknownArrow)


def handle_error(error: BaseException) -> Tuple[int, Dict[str, Any]]:
    """Map an exception raised by a command to (exit code, body)"""
    if isinstance(error, USAGE_ERRORS):
        logger.warning(f"[ERROR HANDLER] Usage error: {type(error).__name__}: {str(error)}")
        body = error.to_dict()
        body['status'] = EXIT_USAGE
        return EXIT_USAGE, body

    if isinstance(error, SkewPfaffError):
        logger.error(f"[ERROR HANDLER] {type(error).__name__}: {str(error)}")
        body = error.to_dict()
        body['status'] = EXIT_CHECK_FAILED
        return EXIT_CHECK_FAILED, body

    logger.error(f"[ERROR HANDLER] Unhandled exception: {type(error).__name__}: {str(error)}")
    logger.error(f"[ERROR HANDLER] Traceback: {traceback.format_exc()}")
    return EXIT_CHECK_FAILED, {
        'error': 'An unexpected error occurred',
        'error_type': type(error).__name__,
        'status': EXIT_CHECK_FAILED,
    }
