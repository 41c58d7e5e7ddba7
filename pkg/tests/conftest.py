import numpy as np
import pytest

from spinsurf import Grid


@pytest.fixture
def grid1d():
    return Grid(64, 1, 0.1, 1.0, "periodic")


@pytest.fixture
def grid2d():
    return Grid(32, 32, 0.2, 0.2, "periodic")


@pytest.fixture
def grid2d_clamped():
    return Grid(32, 32, 0.2, 0.2, "clamped")


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
