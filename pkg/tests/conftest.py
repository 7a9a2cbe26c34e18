import math

import numpy as np
import pytest

from npconfig.domain import build

SQUARE = {"type": "polygon", "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]}
TRIANGLE = {"type": "polygon", "vertices": [[-1, 0], [1, 0], [0, 1]]}
EQUILATERAL = {"type": "polygon", "vertices": [[0, 0], [1, 0], [0.5, math.sqrt(3) / 2]]}
PENTAGON = {
    "type": "polygon",
    "vertices": [[math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)] for k in range(5)],
}
DISK = {"type": "disk", "r": 1.0}
ELLIPSE21 = {"type": "ellipse", "a": 2.0, "b": 1.0}
SECTOR90 = {"type": "sector", "r": 1.0, "theta": math.pi / 2}


@pytest.fixture(scope="session")
def disk():
    return build(DISK)


@pytest.fixture(scope="session")
def ellipse21():
    return build(ELLIPSE21)


@pytest.fixture(scope="session")
def square():
    return build(SQUARE)


@pytest.fixture(scope="session")
def triangle():
    return build(TRIANGLE)


@pytest.fixture(scope="session")
def sector90():
    return build(SECTOR90)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
