import random

import pytest

from liftgirth import graphs


@pytest.fixture
def h23():
    return graphs.h23()


@pytest.fixture
def k32():
    return graphs.k32()


@pytest.fixture
def k4():
    return graphs.complete_graph(4)


@pytest.fixture
def k4me():
    return graphs.k4_minus_edge()


@pytest.fixture
def petersen():
    return graphs.petersen()


@pytest.fixture
def rng():
    return random.Random(12345)
