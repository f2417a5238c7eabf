from __future__ import annotations

import functools

import pytest
from hypothesis import settings

from lombardi import EuclideanLine, describe
from lombardi.drawing import full_construction, restricted_construction

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def _two_lines():
    lines = [EuclideanLine(1.0, 0.0), EuclideanLine(-1.0, 1.0)]
    return lines, describe(lines)


@pytest.fixture(scope="session")
def lines2():
    return _two_lines()


@pytest.fixture(scope="session")
def core2():
    lines, D = _two_lines()
    return restricted_construction(lines, D)


@pytest.fixture(scope="session")
def full2():
    lines, D = _two_lines()
    return full_construction(lines, D)
