import numpy as np
import pytest
from hypothesis import settings

from dsshift import sinkhorn_knopp

settings.register_profile("ci", deadline=None, derandomize=True)
settings.load_profile("ci")


def balanced_operator(n, seed, low=0.5, high=1.5, tol=1e-12):
    """Random positive matrix balanced to doubly stochastic form.

    Entries bounded away from zero keep row entry ratios moderate, so the
    Kantorovich chain stays strictly below 1 for every tested operator.
    """
    rng = np.random.default_rng(seed)
    w = rng.uniform(low, high, (n, n))
    return sinkhorn_knopp(w, tol=tol).operator


@pytest.fixture
def small_operator():
    """The hand-verified 2x2 fixed point [[1/3, 2/3], [2/3, 1/3]]."""
    return sinkhorn_knopp(np.array([[1.0, 2.0], [2.0, 1.0]])).operator
