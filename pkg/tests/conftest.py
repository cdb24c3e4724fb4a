import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def rand_complex(rng, *shape, scale=1.0):
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
