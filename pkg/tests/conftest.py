import pytest
from hypothesis import HealthCheck, settings

from cidade import GF, PolyRing

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def f7xy():
    return PolyRing(GF(7), ["x", "y"])


@pytest.fixture
def f9xy():
    return PolyRing(GF(9), ["x", "y"])


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
