import math

import pytest

from nodescatter.node_sampler import RandomStream
from nodescatter.sector_geometry import SectorAnnulus


@pytest.fixture
def stream():
    return RandomStream(1234)


@pytest.fixture
def unit_disc():
    return SectorAnnulus(0.0, 1.0, 0.0, 2 * math.pi)
