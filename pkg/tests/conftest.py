import numpy as np
import pytest

from hilbertcone import PositiveVector, SimplexPoint


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_positive(rng, n, spread=3.0):
    """Full-support positive vector with log-uniform components."""
    return PositiveVector(tuple(np.exp(rng.uniform(-spread, spread, size=n))))


def random_simplex(rng, n, spread=3.0):
    w = np.exp(rng.uniform(-spread, spread, size=n))
    w = w / w.sum()
    return SimplexPoint(tuple(w / w.sum()))


def random_allowable(rng, n, zero_frac=0.0):
    """Random allowable matrix; zero_frac of the entries are zeroed when possible."""
    a = np.exp(rng.uniform(-2.0, 2.0, size=(n, n)))
    if zero_frac > 0.0:
        mask = rng.random((n, n)) < zero_frac
        a[mask] = 0.0
        for i in range(n):  # repair empty rows/columns
            if a[i].sum() == 0:
                a[i, rng.integers(n)] = 1.0
            if a[:, i].sum() == 0:
                a[rng.integers(n), i] = 1.0
    return a
