import numpy
import pytest

from voigt.dynamics.params import pdeparams
from voigt.lattice.grid import grid
from voigt.utility.instance import instance


@pytest.fixture(autouse=True)
def settings():
    instance.reset()
    yield instance.settings()
    instance.reset()


@pytest.fixture
def unit() -> pdeparams:
    return pdeparams(1.0, 1.0)


@pytest.fixture
def lattice() -> grid:
    return grid(199)


@pytest.fixture
def rng() -> numpy.random.Generator:
    return numpy.random.default_rng(7)
