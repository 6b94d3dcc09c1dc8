import random

import pytest
from hypothesis import settings

from rankdesigns import ExtField, Field, expand, gabidulin
from rankdesigns.fixtures import spread_code, zero_column_counterexample

settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


@pytest.fixture(scope="session")
def f2():
    return Field(2)


@pytest.fixture(scope="session")
def f16():
    return ExtField(Field(2), 4)


@pytest.fixture(scope="session")
def spread():
    return spread_code(2, 2)


@pytest.fixture(scope="session")
def gab423(f16):
    return expand(gabidulin(f16, 4, 2))


@pytest.fixture(scope="session")
def zero_column_code():
    return zero_column_counterexample()


@pytest.fixture
def rng():
    return random.Random(20240611)

