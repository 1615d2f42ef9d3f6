import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from chirpjrc.params import DESK_PARAMS, PAPER_PARAMS

settings.register_profile(
    "ci",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def desk():
    return DESK_PARAMS


@pytest.fixture(scope="session")
def paper():
    return PAPER_PARAMS


@pytest.fixture()
def rng():
    return np.random.default_rng(2024)
