"""Deterministic modularity in pairwise and per-community form, plus the
weighted variant used by the weighting baseline."""

from __future__ import annotations

import numpy as np

from .errors import EmptyWorldError
from .graph import (
    CommunityAssignment,
    PossibleWorld,
    ProbabilisticNetwork,
    edge_partition,
)


def modularity_pairwise(
    net: ProbabilisticNetwork, world: PossibleWorld, comm: CommunityAssignment
) -> float:
    """Newman modularity of one world, evaluated from the adjacency matrix.

    Q = (1/2M) sum_ij (A_ij - k_i k_j / 2M) delta(x_i, x_j), with degrees and
    M taken in the world.  Kept deliberately literal; it is the oracle for
    the per-community form.
    """
    big_m = world.edge_count()
    if big_m == 0:
        raise EmptyWorldError("modularity undefined for an empty world")
    n = net.n
    adj = np.zeros((n, n))
    for idx, (u, v, _) in enumerate(net.edges):
        if world.contains(idx):
            adj[u, v] = adj[v, u] = 1.0
    deg = adj.sum(axis=1)
    labels = np.asarray(comm.labels)
    same = labels[:, None] == labels[None, :]
    null = np.outer(deg, deg) / (2.0 * big_m)
    return float(((adj - null) * same).sum() / (2.0 * big_m))


def modularity_by_community(
    net: ProbabilisticNetwork, world: PossibleWorld, comm: CommunityAssignment
) -> float:
    """Modularity of one world from per-community edge counts.

    Per community: |e_c|/m_w - ((2|e_c| + |e_{c,cbar}|) / (2 m_w))^2, where
    m_w is the world's total edge count.
    """
    big_m = world.edge_count()
    if big_m == 0:
        raise EmptyWorldError("modularity undefined for an empty world")
    total = 0.0
    for c in range(comm.k):
        part = edge_partition(net, comm, c)
        in_mask, cross_mask, _ = part.masks()
        x = (world.mask & in_mask).bit_count()
        y = (world.mask & cross_mask).bit_count()
        total += x / big_m - ((2 * x + y) / (2 * big_m)) ** 2
    return total


def weighted_modularity(
    net: ProbabilisticNetwork, comm: CommunityAssignment
) -> float:
    """Weighted modularity with edge probabilities taken as weights.

    Scale-invariant in the weights, which is exactly why it cannot track
    expected modularity across probability levels.
    """
    big_w = sum(p for _, _, p in net.edges)
    strength = [0.0] * net.n
    labels = comm.labels
    inside = 0.0
    for u, v, p in net.edges:
        strength[u] += p
        strength[v] += p
        if labels[u] == labels[v]:
            inside += p
    per_comm_strength = [0.0] * comm.k
    for node, s in enumerate(strength):
        per_comm_strength[labels[node]] += s
    null = sum(s * s for s in per_comm_strength) / (4.0 * big_w * big_w)
    return inside / big_w - null
