import math

import numpy as np
import pytest

from spinsqueeze import PureState


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def bell_state():
    return PureState(2, np.array([1, 0, 0, 1]) / math.sqrt(2))


def ghz_state(n):
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return PureState(n, amps)


def schmidt_state(theta):
    return PureState(2, np.array([math.cos(theta), 0, 0, math.sin(theta)]))
