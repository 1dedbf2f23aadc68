"""
Configuration utilities
"""

import logging
import os
from typing import Any, Dict, Optional
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ('true', '1', 'yes')


class Config:
    """Toolkit configuration"""

    # Randomized checks
    SEED: int = int(os.getenv('SKEWPFAFF_SEED', '20240601'))
    RANDOM_TRIALS: int = int(os.getenv('SKEWPFAFF_RANDOM_TRIALS', '200'))

    # Algebra limits
    COLON_CAP: int = int(os.getenv('SKEWPFAFF_COLON_CAP', '10'))
    JET_ORDER: int = int(os.getenv('SKEWPFAFF_JET_ORDER', '2'))
    PIECE_CACHE: int = int(os.getenv('SKEWPFAFF_PIECE_CACHE', '32'))  # test pieces kept per closure service

    # Execution
    WORKERS: int = int(os.getenv('SKEWPFAFF_WORKERS', '1'))  # 1 = run in-process

    # Logging
    LOG_LEVEL: str = os.getenv('SKEWPFAFF_LOG_LEVEL', 'WARNING')
    LOG_FILE: Optional[str] = os.getenv('SKEWPFAFF_LOG_FILE')

    # Data
    FIXTURES_DIR: str = os.getenv('SKEWPFAFF_FIXTURES_DIR', 'data/fixtures')

    # Output
    PRETTY: bool = _flag('SKEWPFAFF_PRETTY', 'false')
    TIMINGS: bool = _flag('SKEWPFAFF_TIMINGS', 'false')

    @classmethod
    def get_run_config(cls, **overrides: Any) -> Dict[str, Any]:
        """Get the configuration embedded in run reports"""
        config = {
            'seed': cls.SEED,
            'random_trials': cls.RANDOM_TRIALS,
            'colon_cap': cls.COLON_CAP,
            'jet_order': cls.JET_ORDER,
            'workers': cls.WORKERS,
        }
        config.update({key: value for key, value in overrides.items() if value is not None})
        return config

    @classmethod
    def fixture_path(cls, name: str) -> str:
        """Resolve a fixture file name against the fixtures directory"""
        return os.path.join(cls.FIXTURES_DIR, name)

    @classmethod
    def validate(cls) -> bool:
        """Validate configuration values"""
        logger = logging.getLogger("skewpfaff.config")

        if cls.COLON_CAP < 1:
            logger.warning(f"SKEWPFAFF_COLON_CAP must be positive, got {cls.COLON_CAP}")
            return False

        if cls.JET_ORDER < 1:
            logger.warning(f"SKEWPFAFF_JET_ORDER must be positive, got {cls.JET_ORDER}")
            return False

        if cls.PIECE_CACHE < 1:
            logger.warning(f"SKEWPFAFF_PIECE_CACHE must be positive, got {cls.PIECE_CACHE}")
            return False

        if cls.WORKERS < 1:
            logger.warning(f"SKEWPFAFF_WORKERS must be positive, got {cls.WORKERS}")
            return False

        if not os.path.isdir(cls.FIXTURES_DIR):
            logger.warning(f"Fixtures directory not found: {cls.FIXTURES_DIR}")
            return False

        return True
