import sys
from pathlib import Path

import numpy as np
import pytest

# Flat layout: modules import as algebra.*, reporting.*, suites.* from the repository root.
sys.path.insert(0, str(Path(__file__).resolve().parent))

from algebra.sampling import UNIT_SCALE, sample_momenta  # noqa: E402


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240517)


@pytest.fixture
def momenta(rng: np.random.Generator) -> np.ndarray:
    """Sixteen unit-scale momenta."""
    return sample_momenta(rng, 16, UNIT_SCALE)


@pytest.fixture
def wide_momenta(rng: np.random.Generator) -> np.ndarray:
    return sample_momenta(rng, 16, (1e-3, 1e3))
