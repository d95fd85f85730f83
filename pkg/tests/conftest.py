"""Shared fixtures: small presets, sampled graphs and hand-sized matrices."""

from __future__ import annotations

import numpy as np
import pytest

from simple_rc.model_core import build_preset, mean_matrix, sample_adjacency
from simple_rc.spectral import AdjacencyMatrix


@pytest.fixture
def small_example1():
    """Example-1 layout shrunk to n=300 (30 pure nodes per community)."""
    return build_preset(1, n=300, n0=30, signal=0.5)


@pytest.fixture
def small_example2():
    return build_preset(2, n=300, n0=30, signal=0.5)


@pytest.fixture
def small_example3():
    return build_preset(3, n=300, n0=30, signal=0.5, delta=0.5)


@pytest.fixture
def sampled_example1(small_example1):
    model, group = small_example1
    return sample_adjacency(model, seed=11), model, group


@pytest.fixture
def sampled_example2(small_example2):
    model, group = small_example2
    return sample_adjacency(model, seed=11), model, group


@pytest.fixture
def complete_graph():
    def make(n: int) -> AdjacencyMatrix:
        return AdjacencyMatrix(np.ones((n, n), dtype=np.int8) - np.eye(n, dtype=np.int8))
    return make


@pytest.fixture
def path_graph() -> AdjacencyMatrix:
    X = np.zeros((3, 3), dtype=np.int8)
    X[0, 1] = X[1, 0] = 1
    X[1, 2] = X[2, 1] = 1
    return AdjacencyMatrix(X)


@pytest.fixture
def example1_mean(small_example1):
    model, _ = small_example1
    return mean_matrix(model)
