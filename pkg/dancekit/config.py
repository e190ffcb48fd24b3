"""
DANCEKIT Configuration

Loads data/dancekit.json and applies environment overrides.

Environment:
    DANCEKIT_CONFIG  - alternate configuration file
    DANCEKIT_CENSUS  - census table to use instead of the bundled one

Version: 1.0.0
"""

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from dancekit.logging_config import get_logger

logger = get_logger(__name__)

REPO_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = REPO_ROOT / 'data' / 'dancekit.json'

REQUIRED_SETTINGS = ('census_file', 'report_basename', 'jobs', 'strict', 'max_crossings_exact')


@dataclass(frozen=True)
class DanceConfig:
    """Resolved runtime settings."""
    census_file: Path
    report_basename: str
    jobs: int
    strict: bool
    max_crossings_exact: int


def load_config(config_path: Optional[Union[str, Path]] = None) -> DanceConfig:
    """
    Load configuration from dancekit.json.

    Args:
        config_path: Optional path to a config file (default: DANCEKIT_CONFIG,
            then data/dancekit.json)

    Returns:
        DanceConfig with environment overrides applied

    Raises:
        FileNotFoundError: If the config file does not exist
        ValueError: If required settings are missing
    """
    if config_path is None:
        config_path = os.environ.get('DANCEKIT_CONFIG') or DEFAULT_CONFIG_PATH
    config_path = Path(config_path)

    if not config_path.exists():
        raise FileNotFoundError(f"dancekit config not found at {config_path}")

    with open(config_path, 'r', encoding='utf-8') as f:
        raw = json.load(f)

    settings = raw.get('settings', {})
    missing = [k for k in REQUIRED_SETTINGS if k not in settings]
    if missing:
        raise ValueError(f"Missing required settings in {config_path.name}: {missing}")

    census_file = Path(settings['census_file'])
    if not census_file.is_absolute():
        census_file = REPO_ROOT / census_file

    override = os.environ.get('DANCEKIT_CENSUS')
    if override:
        logger.debug("Census table overridden by DANCEKIT_CENSUS", extra={"census_file": override})
        census_file = Path(override)

    jobs = int(settings['jobs'])
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")

    return DanceConfig(
        census_file=census_file,
        report_basename=str(settings['report_basename']),
        jobs=jobs,
        strict=bool(settings['strict']),
        max_crossings_exact=int(settings['max_crossings_exact']),
    )
