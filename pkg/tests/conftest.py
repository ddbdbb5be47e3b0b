from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from syzygetic.ring import PolyRing, QuotientRing  # noqa: E402


@pytest.fixture
def kxy():
    S = PolyRing("x y")
    return S, S.gens()


@pytest.fixture
def kxyz():
    S = PolyRing("x y z")
    return S, S.gens()


@pytest.fixture
def cubic_surface():
    S = PolyRing("x y z")
    x, y, z = S.gens()
    return QuotientRing(S, [x**3 + y**3 + z**3])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
