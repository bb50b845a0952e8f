import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def data_dir():
    return os.path.abspath(DATA)


@pytest.fixture
def mub():
    from ddinfer.qubit import mub_povm
    return mub_povm()


@pytest.fixture
def tetrahedron():
    from ddinfer.completeness import gen_regular_simplex
    return gen_regular_simplex()


@pytest.fixture
def trine():
    from ddinfer.completeness import gen_trine
    return gen_trine()
