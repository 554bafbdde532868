"""Synthetic probabilistic-network construction: topology generators plus
probability assigners.  Everything is reproducible from an integer seed via
a counter-based generator, so outputs are platform-stable."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import CommunityAssignment, ProbabilisticNetwork

Topology = tuple[int, tuple[tuple[int, int], ...]]  # (n, canonical edge list)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def _canonical(n: int, edges: set[tuple[int, int]]) -> Topology:
    return n, tuple(sorted((min(u, v), max(u, v)) for u, v in edges))


@dataclass(frozen=True)
class SbmParams:
    k: int
    nc: int
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1 or self.nc < 1:
            raise ValueError("k and nc must be >= 1")
        for name, value in (("p_in", self.p_in), ("p_out", self.p_out)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")


def gen_sbm(params: SbmParams) -> tuple[Topology, CommunityAssignment]:
    """Planted-partition topology: k blocks of nc nodes, independent pair coins."""
    rng = _rng(params.seed)
    n = params.k * params.nc
    labels = [i // params.nc for i in range(n)]
    edges: set[tuple[int, int]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            density = params.p_in if labels[i] == labels[j] else params.p_out
            if rng.random() < density:
                edges.add((i, j))
    return _canonical(n, edges), CommunityAssignment.from_labels(labels)


def gen_er(
    n: int,
    p: float | None = None,
    m: int | None = None,
    seed: int = 0,
) -> Topology:
    """Erdos-Renyi topology; either per-pair probability p or exact edge count m."""
    if (p is None) == (m is None):
        raise ValueError("specify exactly one of p or m")
    rng = _rng(seed)
    total_pairs = n * (n - 1) // 2
    edges: set[tuple[int, int]] = set()
    if p is not None:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p={p} outside [0, 1]")
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    edges.add((i, j))
    else:
        if not 0 <= m <= total_pairs:
            raise ValueError(f"m={m} infeasible for n={n}")
        chosen = rng.choice(total_pairs, size=m, replace=False)
        for rank in sorted(int(r) for r in chosen):
            # unrank: pair index within the i < j lexicographic ordering
            i = 0
            remaining = rank
            row = n - 1
            while remaining >= row:
                remaining -= row
                row -= 1
                i += 1
            edges.add((i, i + 1 + remaining))
    return _canonical(n, edges)


def gen_ba(n: int, attach: int, seed: int = 0) -> Topology:
    """Preferential attachment with a seed core of attach + 1 isolated nodes.

    Each later node attaches to exactly `attach` distinct existing nodes, so
    the edge count is attach * (n - attach - 1).
    """
    if attach < 1:
        raise ValueError("attach must be >= 1")
    core = attach + 1
    if n <= core:
        raise ValueError(f"need n > attach + 1 = {core}, got n={n}")
    rng = _rng(seed)
    edges: set[tuple[int, int]] = set()
    repeated: list[int] = []
    for node in range(core, n):
        targets: set[int] = set()
        while len(targets) < attach:
            if repeated:
                pick = repeated[int(rng.integers(len(repeated)))]
            else:
                pick = int(rng.integers(node))
            targets.add(pick)
        for t in targets:
            edges.add((t, node))
            repeated.append(t)
            repeated.append(node)
    return _canonical(n, edges)


def gen_ws(n: int, degree: int, rewire: float, seed: int = 0) -> Topology:
    """Watts-Strogatz ring lattice with random rewiring."""
    if degree >= n:
        raise ValueError(f"degree {degree} must be < n = {n}")
    if degree < 2 or degree % 2:
        raise ValueError("degree must be even and >= 2")
    if not 0.0 <= rewire <= 1.0:
        raise ValueError(f"rewire={rewire} outside [0, 1]")
    rng = _rng(seed)
    edges: set[tuple[int, int]] = set()
    for u in range(n):
        for hop in range(1, degree // 2 + 1):
            v = (u + hop) % n
            edges.add((min(u, v), max(u, v)))
    rewired: set[tuple[int, int]] = set()
    for u, v in sorted(edges):
        if rng.random() < rewire:
            for _ in range(4 * n):
                w = int(rng.integers(n))
                cand = (min(u, w), max(u, w))
                if w != u and cand not in rewired and cand not in edges:
                    rewired.add(cand)
                    break
            else:
                rewired.add((u, v))
        else:
            rewired.add((u, v))
    return _canonical(n, rewired)


def gen_ffn(n: int, fwd_burn: float, seed: int = 0) -> Topology:
    """Forest-fire growth with forward burning only, collapsed to undirected.

    Each new node links to a random ambassador and recursively burns a
    geometric number (mean fwd_burn / (1 - fwd_burn)) of its neighbours.
    """
    if not 0.0 <= fwd_burn < 1.0:
        raise ValueError(f"fwd_burn={fwd_burn} outside [0, 1)")
    if n < 2:
        raise ValueError("need n >= 2")
    rng = _rng(seed)
    neighbours: list[set[int]] = [set() for _ in range(n)]
    edges: set[tuple[int, int]] = set()

    def link(u: int, v: int) -> None:
        edges.add((min(u, v), max(u, v)))
        neighbours[u].add(v)
        neighbours[v].add(u)

    for node in range(1, n):
        ambassador = int(rng.integers(node))
        burned = {ambassador}
        frontier = [ambassador]
        link(node, ambassador)
        while frontier:
            current = frontier.pop(0)
            candidates = [w for w in sorted(neighbours[current]) if w not in burned and w != node]
            if not candidates:
                continue
            burn_count = int(rng.geometric(1.0 - fwd_burn)) - 1 if fwd_burn > 0 else 0
            burn_count = min(burn_count, len(candidates))
            if burn_count == 0:
                continue
            picks = rng.choice(len(candidates), size=burn_count, replace=False)
            for idx in sorted(int(i) for i in picks):
                w = candidates[idx]
                burned.add(w)
                frontier.append(w)
                link(node, w)
    return _canonical(n, edges)


def _binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def entropy_target_probability(ratio: float) -> float:
    """p* in [0.5, 1] with binary entropy equal to ratio (upper branch)."""
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"entropy ratio {ratio} outside [0, 1]")
    if ratio == 1.0:
        return 0.5
    if ratio == 0.0:
        return 1.0
    lo, hi = 0.5, 1.0  # entropy decreases from 1 to 0 on this interval
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        h = _binary_entropy(mid)
        if abs(h - ratio) <= 1e-12:
            return mid
        if h > ratio:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16:
            break
    return 0.5 * (lo + hi)


def assign_probabilities(
    topology: Topology,
    mode: str,
    value: float | None = None,
    seed: int = 0,
) -> ProbabilisticNetwork:
    """Attach edge probabilities to a topology.

    Modes: "constant" (every edge gets `value`), "entropy_target" (every
    edge gets the p >= 0.5 solving the binary entropy equation for `value`),
    "uniform_random" (independent uniforms on (0, 1]).
    """
    n, pairs = topology
    if mode == "constant":
        if value is None or not 0.0 < value <= 1.0:
            raise ValueError(f"constant probability {value} outside (0, 1]")
        probs = [value] * len(pairs)
    elif mode == "entropy_target":
        if value is None:
            raise ValueError("entropy_target mode needs a target ratio")
        probs = [entropy_target_probability(value)] * len(pairs)
    elif mode == "uniform_random":
        rng = _rng(seed)
        probs = [1.0 - float(rng.random()) for _ in pairs]
    else:
        raise ValueError(f"unknown probability mode {mode!r}")
    return ProbabilisticNetwork.from_edges(
        [(u, v, p) for (u, v), p in zip(pairs, probs)], n=n
    )


def random_assignment(n: int, k: int, seed: int = 0) -> CommunityAssignment:
    """Uniform multinomial node labelling, rerolled until all k labels occur."""
    if k > n:
        raise ValueError(f"cannot place {n} nodes into {k} non-empty communities")
    rng = _rng(seed)
    while True:
        labels = [int(rng.integers(k)) for _ in range(n)]
        if len(set(labels)) == k:
            return CommunityAssignment.from_labels(labels)
