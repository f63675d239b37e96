from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from shapeinv.family import build_family

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# valid parameter sets, one or two per sigma case
REPRESENTATIVE = [
    ("one", -2, 0),
    ("one", -2, Fraction(1, 2)),
    ("s", -1, 1),
    ("one-minus-s2", -2, 0),
    ("one-minus-s2", -3, Fraction(1, 2)),
    ("s2-minus-1", -10, 12),
    ("s2", -10, 1),
    ("s2-plus-1", -9, 1),
]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def hermite():
    return build_family("one", -2, 0)


@pytest.fixture
def laguerre():
    return build_family("s", -1, 1)


@pytest.fixture
def legendre():
    return build_family("one-minus-s2", -2, 0)


@pytest.fixture(params=REPRESENTATIVE, ids=lambda r: f"{r[0]}({r[1]},{r[2]})")
def family(request):
    return build_family(*request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
