import numpy as np
import pytest

from dissim_core import validate_matrix


def random_hollow(n, seed):
    """Symmetric hollow matrix with entries U[-1, 1]."""
    rng = np.random.default_rng(seed)
    A = rng.uniform(-1.0, 1.0, size=(n, n))
    A = (A + A.T) / 2.0
    np.fill_diagonal(A, 0.0)
    return A


def squared_euclidean(X):
    diff = X[:, None, :] - X[None, :, :]
    return np.sum(diff ** 2, axis=2)


@pytest.fixture
def three_point():
    """Triangle-violating example: 5 > 1 + 1."""
    return validate_matrix([[0, 1, 1], [1, 0, 5], [1, 5, 0]])


@pytest.fixture
def random_corpus():
    rng = np.random.default_rng(2024)
    sizes = rng.integers(5, 51, size=100)
    return [random_hollow(int(n), seed) for seed, n in enumerate(sizes)]


@pytest.fixture
def two_blobs():
    rng = np.random.default_rng(7)
    left = rng.normal(0.0, 0.3, size=(5, 2))
    right = rng.normal(0.0, 0.3, size=(5, 2)) + np.array([6.0, 0.0])
    return np.vstack([left, right])


@pytest.fixture
def path_edges():
    return [(0, 1), (1, 2)]
