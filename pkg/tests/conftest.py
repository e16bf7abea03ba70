import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from tilecount.grid import dominoes  # noqa: E402
from tilecount.invariants import build_corpus  # noqa: E402
from tilecount.regions import modified_rect, rect  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def mab_extras(limit: int = 28):
    return [modified_rect(a, b) for a in range(2, limit + 3) for b in range(2, limit + 3) if a * b - 2 <= limit]


@pytest.fixture(scope="session")
def domino_corpus():
    extras = [rect(a, b) for a in range(1, 5) for b in range(1, 6)]
    return build_corpus(dominoes(), 8, extras)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
