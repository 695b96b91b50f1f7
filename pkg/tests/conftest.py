"""Shared fixtures: the frozen golden geometry and instances derived from it.

The golden family lives in tests/golden/.  sites30.json is the first run of
generate_sites(30, (0, 0, 5, 5), 1.0, seed=7), committed verbatim; smaller
golden instances are prefixes of it, so the whole suite shares one geometry.
"""

from pathlib import Path

import pytest

from qantenna.geometry import load_sites
from qantenna.ising import build_instance

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def golden_sites30():
    return load_sites(GOLDEN_DIR / "sites30.json")


@pytest.fixture(scope="session")
def golden10(golden_sites30):
    """10-site unconstrained instance used for the annealing-shape checks."""
    return build_instance(golden_sites30.subset(10), lam=0.0)


@pytest.fixture(scope="session")
def golden12(golden_sites30):
    """12-site constrained instance (lam=1, n_t=6)."""
    return build_instance(golden_sites30.subset(12), lam=1.0)


@pytest.fixture(scope="session")
def golden16(golden_sites30):
    """16-site unconstrained instance."""
    return build_instance(golden_sites30.subset(16), lam=0.0)
