import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sbmcluster.data import Dataset, load_iris  # noqa: E402


@pytest.fixture(scope="session")
def iris():
    return load_iris()


@pytest.fixture
def two_blobs():
    rng = np.random.default_rng(7)
    X = np.vstack([rng.normal(0.0, 0.1, size=(15, 2)), rng.normal(10.0, 0.1, size=(15, 2))])
    return Dataset("blobs", X, np.repeat([0, 1], 15))
