import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sliceopt.slice_model import ScenarioSpec  # noqa: E402


@pytest.fixture
def two_flow():
    return ScenarioSpec("eMBB", (2.0, 1.0), 2.5, 1.0, 20.0, 0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# Acceptance criteria append "PASS ..." / "FAIL ..." lines here; they are
# repeated in the terminal summary so they survive output capturing.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
