import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from alphaleak import bsc, identity_channel, uniform  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# Orders exercised by most property tests: both extended ends, both sides of 1.
ALPHA_GRID = (0.0, 0.3, 0.5, 0.9, 1.0, 1.1, 2.0, 5.0, math.inf)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bsc_fixture():
    return uniform(2), bsc(0.25)


@pytest.fixture
def identity3():
    return uniform(3), identity_channel(3)


@pytest.fixture
def bsc_file():
    return FIXTURES / "bsc_uniform.json"


def pytest_terminal_summary(terminalreporter):
    lines = [v for reps in terminalreporter.stats.values() for r in reps
             for k, v in getattr(r, "user_properties", ()) if k == "acceptance"
             and getattr(r, "when", "call") == "call"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(lines), key=lambda s: s.split(":")[0]):
            terminalreporter.write_line(line)
