from fractions import Fraction

import pytest

from hyperdyn.config import Budget
from hyperdyn.dynsys import finite_rotation, finite_system, grid_doubling, identity_map
from hyperdyn.metric_core import cycle_metric
from hyperdyn.shift import full_shift


@pytest.fixture
def budget():
    return Budget()


@pytest.fixture
def z4():
    """The 4-cycle with unit steps."""
    return cycle_metric(4, unit=Fraction(1))


@pytest.fixture
def rot4():
    return finite_rotation(4, 1)


@pytest.fixture
def rot5():
    return finite_rotation(5, 1)


@pytest.fixture
def id2():
    return identity_map(2)


@pytest.fixture
def tail_map():
    """0 -> 1, 1 -> 2, 2 -> 1 on three points."""
    return finite_system("tail", (1, 2, 1))


@pytest.fixture
def merge2():
    """0 -> 1, 1 -> 1 on two points."""
    return finite_system("merge", (1, 1))


@pytest.fixture(scope="session")
def doubling729():
    return grid_doubling(729)


@pytest.fixture
def shift2():
    return full_shift(2)
