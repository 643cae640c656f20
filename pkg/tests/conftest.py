import math

import numpy as np
import pytest

from degdirac.solutions import DegenerateParams, validate_params

ORIGIN = (0.0, 0.0, 0.0, 0.0)


@pytest.fixture
def p0():
    """alpha = pi/3, beta = pi/12, m = 1, c1 = 1."""
    return validate_params(DegenerateParams(math.pi / 3, math.pi / 12, 1.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def events(rng):
    return rng.uniform(-5, 5, size=(100, 4))


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
