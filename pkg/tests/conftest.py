import math

import pytest

from diracstep import IncidentAmplitudes, MediumParams

MU = 0.5
SIN_C = 0.5
SIN_THETA = 0.3

# Frozen from an independent exploration solver (separate code path, scalar
# continuity relations); mu = 0.5, sin(theta_c) = 0.5, sin(theta) = 0.3.
FROZEN = {
    "diffusion": {
        "nu": 0.3385621722338523,
        "A": -0.25627494706031273 - 0.1611894846210227j,
        "quad": [0.1812137529145706 - 0.11397817763148982j, -0.18121375291457062 + 0.11397817763148974j,
                 0.8449242318111003 - 0.050246355860391285j, 0.8449242318111002 - 0.05024635586039134j],
    },
    "klein": {
        "nu": 1.6614378277661477,
        "A": 1.1439168484704485 + 0.7194904120333774j,
        "quad": [-0.8088713606669987 + 0.508756549347504j, 0.8088713606669988 - 0.5087565493475044j,
                 0.5382894785193552 - 0.6015728184168271j, 0.5382894785193549 - 0.601572818416827j],
    },
}


@pytest.fixture
def theta():
    return math.asin(SIN_THETA)


@pytest.fixture(params=["diffusion", "klein"])
def side(request):
    return request.param


@pytest.fixture
def medium(side):
    return MediumParams.from_critical(MU, SIN_C, side)


@pytest.fixture
def equal_inc():
    return IncidentAmplitudes(1 / math.sqrt(2), 1 / math.sqrt(2))


@pytest.fixture
def plus_inc():
    return IncidentAmplitudes(1.0, 0.0)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
