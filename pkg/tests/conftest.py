"""
Shared fixtures for dancekit tests.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

from dancekit.codec import parse_braid, parse_gauss, parse_pd  # noqa: E402

REPO_ROOT = Path(__file__).resolve().parent.parent
GOLDEN_DIR = Path(__file__).resolve().parent / 'golden'

TREFOIL_GAUSS = 'O1U2O3U1O2U3'
TREFOIL_PD = 'X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)'
TREFOIL_BRAID = 'n=2; 1 1 1'

settings.register_profile(
    'dancekit',
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile('thorough', parent=settings.get_profile('dancekit'), max_examples=1000)
settings.load_profile('dancekit')


@pytest.fixture
def trefoil():
    return parse_gauss(TREFOIL_GAUSS)


@pytest.fixture
def trefoil_pd():
    return parse_pd(TREFOIL_PD)


@pytest.fixture
def trefoil_braid():
    return parse_braid(TREFOIL_BRAID)


@pytest.fixture
def kink():
    """One-crossing twisted unknot O1U1."""
    return parse_gauss('O1U1')


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture
def census_csv(tmp_path):
    """Write a small census file and return its path."""
    def _write(body, header='name,pd,gauss,braid,crossing_number,braid_index,bridge_index,alternating,nontrivial'):
        path = tmp_path / 'census.csv'
        path.write_text(header + '\n' + body, encoding='utf-8')
        return path
    return _write
