# tests/conftest.py
"""
Shared towers, codes and groups. Construction is cached in the engine, the
session scope here only keeps test bodies short.
"""

import numpy as np
import pytest

from core import cyclic_codes as codes
from core.field_tower import code_tower
from core.moebius import stabilizer_group


@pytest.fixture(scope="session")
def tower4():
    return code_tower(4)


@pytest.fixture(scope="session")
def tower9():
    return code_tower(9)


@pytest.fixture(scope="session")
def bch9():
    return codes.antiprimitive_bch(9, 3)


@pytest.fixture(scope="session")
def dual9(bch9):
    return codes.dual(bch9)


@pytest.fixture(scope="session")
def bch4():
    return codes.antiprimitive_bch(4, 2)


@pytest.fixture(scope="session")
def group9():
    return stabilizer_group(9)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
