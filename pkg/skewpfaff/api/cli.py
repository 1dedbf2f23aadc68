"""
Command-line front end

All reports are JSON on standard output; --pretty prints the check table with pandas
instead. Logs go to standard error.
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, TextIO

import pandas as pd

from ..models.report import RunReport
from ..utils.config import Config
from ..utils.errors import InterchangeError
from ..utils.logging import bind_run, get_logger, setup_logging
from .commands import COMMANDS, run
from .error_handlers import EXIT_CHECK_FAILED, EXIT_OK, handle_error

logger = get_logger('cli')


class UsageParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors get a JSON body"""

    def error(self, message: str):
        raise InterchangeError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = UsageParser(prog='pfaffian_verifier',
                         description='Exact checks for 6x6 skew matrices of linear forms on P^4')
    parser.add_argument('command', choices=COMMANDS, help='What to run')
    parser.add_argument('--input', '-i', help='JSON input document (matrix, closure request or jet)')
    parser.add_argument('--cubic', help='JSON cubic document for closure and jets')
    parser.add_argument('--type', choices=('a', 'b', 'c', 'd', 'e', 'f'),
                        help='Use the catalog matrix of this type when no input is given')
    parser.add_argument('--arrow', help='Degeneration arrow for verify-strata, e.g. "a->c" or "case3"')
    parser.add_argument('--seed', type=int, default=None, help=f'Random seed (default {Config.SEED})')
    parser.add_argument('--pretty', action='store_true', default=Config.PRETTY,
                        help='Human-readable check table instead of JSON')
    parser.add_argument('--jet-order', type=int, default=None, help=f'Jet order (default {Config.JET_ORDER})')
    parser.add_argument('--colon-cap', type=int, default=None,
                        help=f'Maximal colon power in saturation (default {Config.COLON_CAP})')
    parser.add_argument('--workers', type=int, default=None,
                        help=f'Worker processes for verify commands (default {Config.WORKERS})')
    parser.add_argument('--log-level', default=Config.LOG_LEVEL, help='Logging level')
    parser.add_argument('--timings', action='store_true', default=False, help='Include step timings')
    return parser


def load_json(path: str) -> Any:
    """Read a JSON file, reporting decode errors with their line and column"""
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except FileNotFoundError as exc:
        raise InterchangeError(f"input file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InterchangeError(f"malformed JSON in {path}: {exc.msg}", [exc.lineno, exc.colno]) from exc


def _positive(name: str, value: Optional[int]):
    if value is not None and value < 1:
        raise InterchangeError(f"usage: --{name} must be positive, got {value}")


def options_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    for name in ('jet-order', 'colon-cap', 'workers'):
        _positive(name, getattr(args, name.replace('-', '_')))
    return {
        'input': load_json(args.input) if args.input else None,
        'cubic': load_json(args.cubic) if args.cubic else None,
        'type': args.type,
        'arrow': args.arrow,
        'seed': args.seed,
        'jet_order': args.jet_order,
        'colon_cap': args.colon_cap,
        'workers': args.workers,
        'timings': args.timings,
    }


def render_pretty(report: RunReport) -> str:
    """Check table plus the scalar data fields"""
    lines = [f"{report.command}: {'PASS' if report.passed else 'FAIL'} (seed {report.seed})"]
    if report.checks:
        frame = pd.DataFrame([
            {'check': c.name, 'passed': c.passed, 'expected': c.expected, 'actual': c.actual}
            for c in report.checks
        ])
        lines.append(frame.to_string(index=False))
    scalars = {key: value for key, value in report.data.items() if isinstance(value, (int, str, bool))}
    for key, value in scalars.items():
        lines.append(f"{key}: {value}")
    return '\n'.join(lines)


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Parse arguments, run one command, print its report; returns the exit code"""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except InterchangeError as exc:
        code, body = handle_error(exc)
        print(json.dumps(body, indent=2), file=stdout)
        return code

    setup_logging(args.log_level, Config.LOG_FILE)
    bind_run(args.command, Config.SEED if args.seed is None else args.seed)
    if not Config.validate():
        logger.warning("Configuration validation failed, using defaults where possible")

    try:
        report = run(args.command, options_from_args(args))
    except Exception as exc:
        code, body = handle_error(exc)
        print(json.dumps(body, indent=2), file=stdout)
        return code

    if args.pretty:
        print(render_pretty(report), file=stdout)
    else:
        print(json.dumps(report.to_dict(), indent=2, default=str), file=stdout)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED

