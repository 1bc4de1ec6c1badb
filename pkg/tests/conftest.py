"""Shared fixtures for the test suite."""

import os
import random
from collections.abc import Iterator

import pytest

from restricted_sumsets.config import get_settings
from restricted_sumsets.core.field import PrimeModulus
from restricted_sumsets.main import configure_logging


@pytest.fixture(scope="session", autouse=True)
def stderr_logging() -> None:
    """Keep log lines off stdout, where commands print their records."""
    configure_logging()


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Isolate every test from RSUMSET_* variables and the settings cache."""
    for name in list(os.environ):
        if name.upper().startswith("RSUMSET_"):
            monkeypatch.delenv(name)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def f5() -> PrimeModulus:
    return PrimeModulus(5)


@pytest.fixture
def f7() -> PrimeModulus:
    return PrimeModulus(7)


@pytest.fixture
def f11() -> PrimeModulus:
    return PrimeModulus(11)


@pytest.fixture
def f13() -> PrimeModulus:
    return PrimeModulus(13)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
