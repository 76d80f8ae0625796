import numpy as np
import pytest

from cmoead.core import Individual, Subproblem, make_evaluation
from cmoead.decomposition import build_neighborhoods, generate_weights


def ind(f, h=(), x=None) -> Individual:
    x = np.zeros(1) if x is None else np.asarray(x, dtype=float)
    return Individual(x, make_evaluation(f, h))


def make_subproblems(incumbents, T, capacity=10):
    N = len(incumbents)
    W = generate_weights(N, 2)
    B = build_neighborhoods(W, T)
    return [Subproblem(i, W[i], B[i], incumbents[i], capacity) for i in range(N)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
