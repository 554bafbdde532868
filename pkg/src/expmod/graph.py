"""Core data model for probabilistic networks and community assignments.

A probabilistic network is a simple undirected graph whose edges carry an
independent existence probability in (0, 1].  A possible world is one
deterministic realization (a subset of the edges); there are 2^m of them.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError

DEFAULT_WORLD_CAP = 25
WORLD_CAP_ENV = "EXPMOD_WORLD_CAP"


def default_world_cap() -> int:
    """Enumeration cap (edges) for exact world-level methods."""
    raw = os.environ.get(WORLD_CAP_ENV)
    if raw is None:
        return DEFAULT_WORLD_CAP
    cap = int(raw)
    if cap < 0:
        raise ValueError(f"{WORLD_CAP_ENV} must be non-negative, got {cap}")
    return cap


@dataclass(frozen=True)
class ProbabilisticNetwork:
    """Simple undirected graph with per-edge existence probabilities.

    Edges are stored canonically: endpoints normalized to (min, max) and
    sorted, which makes file round-trips and world bitmask indexing stable.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        max_node = -1
        for u, v, p in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            if not 0.0 < p <= 1.0:
                raise ValueError(f"edge {key} probability {p} outside (0, 1]")
            if u < 0 or v < 0:
                raise ValueError(f"negative node id in edge {key}")
            max_node = max(max_node, u, v)
        if self.n < max_node + 1:
            raise ValueError(f"n={self.n} smaller than max node id {max_node}")

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[int, int, float]], n: int | None = None
    ) -> "ProbabilisticNetwork":
        canon = sorted((min(u, v), max(u, v), float(p)) for u, v, p in edges)
        max_node = max((v for _, v, _ in canon), default=-1)
        return cls(n=max_node + 1 if n is None else n, edges=tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def probabilities(self) -> np.ndarray:
        return np.array([p for _, _, p in self.edges], dtype=float)


@dataclass(frozen=True)
class CommunityAssignment:
    """Total map from node id to community id (both dense, 0-based)."""

    labels: tuple[int, ...]
    k: int = field(default=0)

    def __post_init__(self) -> None:
        if not self.labels:
            raise ValueError("empty community assignment")
        used = set(self.labels)
        k = self.k or (max(used) + 1)
        object.__setattr__(self, "k", k)
        if used != set(range(k)):
            raise ValueError(
                f"community ids must be exactly 0..{k - 1}, got {sorted(used)}"
            )

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "CommunityAssignment":
        return cls(labels=tuple(int(x) for x in labels))

    def members(self, c: int) -> list[int]:
        if not 0 <= c < self.k:
            raise ValueError(f"unknown community id {c}")
        return [i for i, lab in enumerate(self.labels) if lab == c]


@dataclass(frozen=True)
class PossibleWorld:
    """One deterministic realization, as a bitmask over the edge sequence."""

    mask: int

    def edge_count(self) -> int:
        return self.mask.bit_count()

    def contains(self, edge_index: int) -> bool:
        return bool(self.mask >> edge_index & 1)


@dataclass(frozen=True)
class EdgePartition:
    """Per-community split of the edge sequence into inside/crossing/outside."""

    inside: tuple[int, ...]
    crossing: tuple[int, ...]
    outside: tuple[int, ...]

    @property
    def tx(self) -> int:
        return len(self.inside)

    @property
    def ty(self) -> int:
        return len(self.crossing)

    @property
    def tz(self) -> int:
        return len(self.outside)

    def masks(self) -> tuple[int, int, int]:
        inside = sum(1 << i for i in self.inside)
        crossing = sum(1 << i for i in self.crossing)
        outside = sum(1 << i for i in self.outside)
        return inside, crossing, outside


def edge_partition(
    net: ProbabilisticNetwork, comm: CommunityAssignment, c: int
) -> EdgePartition:
    """Split edges by how many endpoints fall in community c."""
    if not 0 <= c < comm.k:
        raise ValueError(f"unknown community id {c}")
    labels = comm.labels
    inside, crossing, outside = [], [], []
    for idx, (u, v, _) in enumerate(net.edges):
        hits = (labels[u] == c) + (labels[v] == c)
        if hits == 2:
            inside.append(idx)
        elif hits == 1:
            crossing.append(idx)
        else:
            outside.append(idx)
    return EdgePartition(tuple(inside), tuple(crossing), tuple(outside))


def world_probability(net: ProbabilisticNetwork, world: PossibleWorld) -> float:
    """Probability of observing exactly this edge subset (independent edges)."""
    if world.mask < 0 or world.mask >> net.m:
        raise ValueError(f"world mask {world.mask:#x} out of range for m={net.m}")
    prob = 1.0
    for idx, (_, _, p) in enumerate(net.edges):
        prob *= p if world.mask >> idx & 1 else 1.0 - p
    return prob


def _split_probability_tables(
    ps: Sequence[float],
) -> tuple[list[float], list[float], int]:
    """Tables so prob(mask) = low[mask & (2^h - 1)] * high[mask >> h]."""
    h = len(ps) // 2
    low = np.ones(1)
    for p in ps[:h]:
        low = np.concatenate([low * (1.0 - p), low * p])
    high = np.ones(1)
    for p in ps[h:]:
        high = np.concatenate([high * (1.0 - p), high * p])
    return low.tolist(), high.tolist(), h


def enumerate_worlds(
    net: ProbabilisticNetwork, cap: int | None = None
) -> Iterator[tuple[PossibleWorld, float]]:
    """Yield all 2^m worlds with their probabilities, bitmask ascending."""
    cap = default_world_cap() if cap is None else cap
    if net.m > cap:
        raise CapacityError(
            f"network has m={net.m} edges, above the enumeration cap of {cap}"
        )
    ps = [p for _, _, p in net.edges]
    low, high, h = _split_probability_tables(ps)
    lo_mask = (1 << h) - 1
    for mask in range(1 << net.m):
        yield PossibleWorld(mask), low[mask & lo_mask] * high[mask >> h]


def entropy_ratio(net: ProbabilisticNetwork) -> float:
    """Joint edge entropy (base 2) normalized by the edge count; in [0, 1]."""
    if net.m == 0:
        raise ValueError("entropy ratio undefined for a network with no edges")
    total = 0.0
    for _, _, p in net.edges:
        q = 1.0 - p
        if 0.0 < p < 1.0:
            total -= p * math.log2(p) + q * math.log2(q)
    return total / net.m
