import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from hypertrans.axioms import FIXTURE_EDGES, FIXTURE_WEDGE  # noqa: E402
from hypertrans.core import WedgeParts  # noqa: E402


@pytest.fixture
def fixture_parts() -> WedgeParts:
    return WedgeParts.from_edges(*FIXTURE_WEDGE)


@pytest.fixture
def E():
    return FIXTURE_EDGES


@pytest.fixture
def rng():
    return random.Random(12345)
