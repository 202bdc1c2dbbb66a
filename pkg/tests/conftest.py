from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from cherednik.group import build_group

settings.register_profile(
    "repo",
    max_examples=200,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@lru_cache(maxsize=None)
def group(name: str):
    return build_group(name)


@pytest.fixture(scope="session")
def groups():
    return {name: group(name) for name in ("Z2", "Z3", "Z4", "B2", "G2")}
