import os

import pytest
from hypothesis import HealthCheck, settings

from gyrotopo.formats import load_fixture_gyro, load_fixture_topo

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def g8():
    return load_fixture_gyro("g8.gyro")


@pytest.fixture(scope="session")
def coset_topo():
    return load_fixture_topo("g8-coset.topo", 8)


@pytest.fixture(scope="session")
def small_groups():
    return {name: load_fixture_gyro(f"{name}.gyro") for name in ("z2", "z4", "k4", "s3")}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
