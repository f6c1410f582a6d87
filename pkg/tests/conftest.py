import functools

import pytest
from hypothesis import HealthCheck, settings

from polyspecies import ptrees, succulents

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def polygonal(N, k=None, action="geometric"):
    return ptrees.solve(N, k, polygon_action=action)


@functools.lru_cache(maxsize=None)
def succulent(N, action="geometric"):
    return succulents.solve(N, polygon_action=action)


@pytest.fixture(scope="session")
def poly26():
    return polygonal(26)


@pytest.fixture(scope="session")
def succ19():
    return succulent(19)
