import numpy as np
import pytest

from expmod import CommunityAssignment, ProbabilisticNetwork


@pytest.fixture
def two_edge_net() -> ProbabilisticNetwork:
    """Two half-probability edges in two separate communities."""
    return ProbabilisticNetwork.from_edges([(0, 1, 0.5), (2, 3, 0.5)])


@pytest.fixture
def two_edge_comm() -> CommunityAssignment:
    return CommunityAssignment.from_labels([0, 0, 1, 1])


def random_network(rng: np.random.Generator, n: int, m: int) -> ProbabilisticNetwork:
    """Random n-node, m-edge network with uniform (0, 1] probabilities."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    picks = rng.choice(len(pairs), size=m, replace=False)
    edges = [(pairs[i][0], pairs[i][1], 1.0 - float(rng.random())) for i in picks]
    return ProbabilisticNetwork.from_edges(edges, n=n)


def random_communities(rng: np.random.Generator, n: int, k: int) -> CommunityAssignment:
    while True:
        labels = rng.integers(k, size=n)
        if len(set(labels.tolist())) == k:
            return CommunityAssignment.from_labels(labels.tolist())
