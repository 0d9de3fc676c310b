import numpy as np
import pytest

from adrcm.point_process import ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def make_params(gamma=0.5, beta=1.0, n=1000.0, **kw):
    return ModelParams(beta=beta, gamma=gamma, window_length=n, **kw)
