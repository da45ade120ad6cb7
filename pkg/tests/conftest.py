import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dualarm.chain import ArmSpec, BodyGeometry
from dualarm.config import RobotConfig
from dualarm.design import MotorSpec


@pytest.fixture
def spec():
    return ArmSpec()


@pytest.fixture
def body():
    return BodyGeometry()


@pytest.fixture
def motor():
    return MotorSpec()


@pytest.fixture
def config():
    return RobotConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one visible pass/fail line per acceptance criterion, printed after the run
def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from test_acceptance import CRITERIA, acceptance_notes

    lines = []
    for outcome, label in (("passed", "PASS"), ("failed", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            criterion = CRITERIA.get(name, name)
            note = acceptance_notes.get(name, "")
            lines.append((name, f"{label}: {criterion}{note}"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
