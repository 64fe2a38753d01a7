import sys
from pathlib import Path

import pytest

# Tests import src.* the same way the entry script does
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.spectra import make_quotient, spectral_unit  # noqa: E402


@pytest.fixture
def units():
    """units(q, k): absolute threshold equal to exactly k units of u = pi / (2c)."""
    def in_units(q, k):
        return k * spectral_unit(q).exact
    return in_units


@pytest.fixture
def unit_quotient():
    return make_quotient(1, (1,), 1)
