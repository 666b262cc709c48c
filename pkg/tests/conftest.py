import math

import numpy as np
import pytest
from hypothesis import strategies as st

from xyzdm.model import ModelParams

# parameter sets used across several test modules
PLATEAU = ModelParams(j=1.0, gamma=0.5, jz=-1.0, dm=0.0, b_mean=0.8, b_inhom=0.0)
PHASE = ModelParams(j=1.0, gamma=0.3, jz=0.5, b_mean=4.0, b_inhom=2.5)
CHANNEL = ModelParams(j=1.0, gamma=0.3, jz=-1.0, b_mean=1.0, b_inhom=0.5, temperature=0.1)

coupling = st.floats(-5.0, 5.0, allow_nan=False)
temperature = st.floats(0.05, 10.0, allow_nan=False)


@st.composite
def model_params(draw, temps=temperature):
    return ModelParams(
        j=draw(coupling),
        gamma=draw(st.floats(-1.0, 1.0)),
        jz=draw(coupling),
        dm=draw(coupling),
        b_mean=draw(coupling),
        b_inhom=draw(coupling),
        temperature=draw(temps),
    )


angles = st.tuples(st.floats(0.0, math.pi), st.floats(0.0, 2.0 * math.pi))


def random_params(rng, n, temperature=None):
    out = []
    for _ in range(n):
        j, jz, dm, b_mean, b_inhom = rng.uniform(-5.0, 5.0, 5)
        t = rng.uniform(0.05, 10.0) if temperature is None else temperature
        out.append(ModelParams(j, rng.uniform(-1.0, 1.0), jz, dm, b_mean, b_inhom, t))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one line per acceptance criterion, printed after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
