import pytest

from compatri.geometry import validate_polygon

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]
DART = [(0, 0), (4, 0), (1, 1), (0, 4)]
L_HEXAGON = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
BOWTIE = [(0, 0), (2, 2), (2, 0), (0, 2)]


@pytest.fixture
def square():
    return validate_polygon(SQUARE)


@pytest.fixture
def dart():
    return validate_polygon(DART)


@pytest.fixture
def lhex():
    return validate_polygon(L_HEXAGON)


@pytest.fixture
def triangle():
    return validate_polygon(TRIANGLE)
