import pytest

from gtdih import common


@pytest.fixture(autouse=True)
def clean_bound_env(monkeypatch):
    """
    Keep a GTDIH_BOUND from the calling shell out of the tests.
    """

    monkeypatch.delenv(common.BOUND_ENV_VAR, raising=False)


@pytest.fixture
def rng():
    import numpy as np
    return np.random.default_rng(common.RANDOM_SEED)
