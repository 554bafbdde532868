"""The six expected-modularity computation methods.

Exact routes: brute force over all 2^m worlds, partition-based summation
with enumerated Poisson-Binomial PMFs (PWP), and the same summation with
DFT closed-form PMFs (FPWP).  Baselines: sampling, thresholding, weighting.
All return a uniform Estimate record and share one convention: the empty
world contributes modularity 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .errors import CapacityError
from .graph import (
    CommunityAssignment,
    PossibleWorld,
    ProbabilisticNetwork,
    _split_probability_tables,
    default_world_cap,
    edge_partition,
)
from .modularity import modularity_by_community, weighted_modularity
from .poisson_binomial import Pmf, pb_pmf_dft, pb_pmf_dft_per_entry, pb_pmf_enumeration

METHODS = ("brute_force", "sampling", "thresholding", "weighting", "pwp", "fpwp")

# below this many (x, y, z) partition terms the summation loop stays in pure
# Python; above, the innermost axis is vectorized
_VECTOR_SUM_THRESHOLD = 5000


@dataclass(frozen=True)
class Estimate:
    """Result of one estimator invocation."""

    method: str
    value: float
    elapsed: float
    params: dict[str, Any] = field(default_factory=dict)
    extras: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.elapsed < 0:
            raise ValueError("elapsed must be non-negative")


def q_cxyz(x: int, y: int, z: int) -> float:
    """Per-community modularity term for a partition with counts (x, y, z).

    The all-zero partition is the empty world, which contributes 0 by
    convention.
    """
    t = x + y + z
    if t == 0:
        return 0.0
    return x / t - ((2 * x + y) / (2 * t)) ** 2


def partition_probability(
    pmf_x: Pmf, pmf_y: Pmf, pmf_z: Pmf, x: int, y: int, z: int
) -> float:
    """Pr(d^{xyz}): product of the three per-set count probabilities."""
    for pmf, idx, name in ((pmf_x, x, "x"), (pmf_y, y, "y"), (pmf_z, z, "z")):
        if not 0 <= idx < len(pmf):
            raise ValueError(f"index {name}={idx} out of range for PMF of size {len(pmf)}")
    return pmf_x[x] * pmf_y[y] * pmf_z[z]


def brute_force(
    net: ProbabilisticNetwork,
    comm: CommunityAssignment,
    cap: int | None = None,
) -> Estimate:
    """Exact reference: walk every possible world and average its modularity."""
    cap = default_world_cap() if cap is None else cap
    if net.m > cap:
        raise CapacityError(
            f"brute force needs 2^{net.m} worlds, above the cap of {cap} edges"
        )
    start = time.perf_counter()
    pair_masks = []
    for c in range(comm.k):
        in_mask, cross_mask, _ = edge_partition(net, comm, c).masks()
        pair_masks.append((in_mask, cross_mask))
    low, high, h = _split_probability_tables([p for _, _, p in net.edges])
    lo_mask = (1 << h) - 1
    total = 0.0
    for w in range(1, 1 << net.m):
        mw = w.bit_count()
        q = 0.0
        for in_mask, cross_mask in pair_masks:
            x = (w & in_mask).bit_count()
            y = (w & cross_mask).bit_count()
            q += x / mw - ((2 * x + y) / (2 * mw)) ** 2
        total += q * low[w & lo_mask] * high[w >> h]
    elapsed = time.perf_counter() - start
    return Estimate("brute_force", total, elapsed, params={"cap": cap})


def sample_estimate(
    net: ProbabilisticNetwork,
    comm: CommunityAssignment,
    samples: int,
    seed: int = 0,
    chunk_size: int = 8192,
) -> Estimate:
    """Monte Carlo average over worlds drawn by per-edge Bernoulli trials.

    Worlds are drawn from one counter-based Philox stream keyed on the seed
    and consumed in fixed sample order, so runs are reproducible and chunks
    are independent.
    """
    if samples < 1:
        raise ValueError(f"sample count must be >= 1, got {samples}")
    start = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(seed))
    p = net.probabilities()
    index_pairs = []
    for c in range(comm.k):
        part = edge_partition(net, comm, c)
        index_pairs.append(
            (np.asarray(part.inside, dtype=np.intp), np.asarray(part.crossing, dtype=np.intp))
        )
    values = np.empty(samples)
    done = 0
    while done < samples:
        count = min(chunk_size, samples - done)
        present = rng.random((count, net.m)) <= p
        mw = present.sum(axis=1).astype(float)
        q = np.zeros(count)
        with np.errstate(divide="ignore", invalid="ignore"):
            for in_idx, cross_idx in index_pairs:
                x = present[:, in_idx].sum(axis=1)
                y = present[:, cross_idx].sum(axis=1)
                q += x / mw - ((2 * x + y) / (2 * mw)) ** 2
        q[mw == 0] = 0.0
        values[done : done + count] = q
        done += count
    value = float(values.mean())
    std = float(values.std(ddof=1)) if samples > 1 else 0.0
    elapsed = time.perf_counter() - start
    return Estimate(
        "sampling",
        value,
        elapsed,
        params={"samples": samples, "seed": seed},
        extras={"std_error": std / samples**0.5, "sample_std": std},
    )


def threshold_estimate(
    net: ProbabilisticNetwork, comm: CommunityAssignment, threshold: float
) -> Estimate:
    """Modularity of the deterministic world keeping edges with p >= threshold."""
    start = time.perf_counter()
    mask = 0
    for idx, (_, _, p) in enumerate(net.edges):
        if p >= threshold:
            mask |= 1 << idx
    if mask == 0:
        value = 0.0
    else:
        value = modularity_by_community(net, PossibleWorld(mask), comm)
    elapsed = time.perf_counter() - start
    return Estimate("thresholding", value, elapsed, params={"threshold": threshold})


def weighting_estimate(
    net: ProbabilisticNetwork, comm: CommunityAssignment
) -> Estimate:
    """Weighted modularity with probabilities taken as weights (baseline)."""
    start = time.perf_counter()
    value = weighted_modularity(net, comm)
    elapsed = time.perf_counter() - start
    return Estimate("weighting", value, elapsed)


def _partition_sum_python(pmf_x: Pmf, pmf_y: Pmf, pmf_z: Pmf) -> float:
    total = 0.0
    for x, px in enumerate(pmf_x.probs):
        for y, py in enumerate(pmf_y.probs):
            wxy = px * py
            s = x + y
            two_x_y = 2 * x + y
            for z, pz in enumerate(pmf_z.probs):
                t = s + z
                if t == 0:
                    continue
                total += (x / t - (two_x_y / (2 * t)) ** 2) * wxy * pz
    return total


def _partition_sum_vectorized(pmf_x: Pmf, pmf_y: Pmf, pmf_z: Pmf) -> float:
    px = np.asarray(pmf_x.probs)
    py = np.asarray(pmf_y.probs)
    pz = np.asarray(pmf_z.probs)
    ys = np.arange(py.size)[:, None]
    zs = np.arange(pz.size)[None, :]
    wyz = py[:, None] * pz[None, :]
    total = 0.0
    for x, wx in enumerate(px):
        t = x + ys + zs
        with np.errstate(divide="ignore", invalid="ignore"):
            q = x / t - ((2 * x + ys) / (2 * t)) ** 2
        if x == 0:
            q[0, 0] = 0.0
        total += wx * float((q * wyz).sum())
    return total


def _partition_method(
    net: ProbabilisticNetwork,
    comm: CommunityAssignment,
    pmf_of: Callable[[Sequence[float]], Pmf],
    vectorize: bool,
) -> float:
    ps = [p for _, _, p in net.edges]
    total = 0.0
    for c in range(comm.k):
        part = edge_partition(net, comm, c)
        pmf_x = pmf_of([ps[i] for i in part.inside])
        pmf_y = pmf_of([ps[i] for i in part.crossing])
        pmf_z = pmf_of([ps[i] for i in part.outside])
        terms = len(pmf_x) * len(pmf_y) * len(pmf_z)
        if vectorize and terms > _VECTOR_SUM_THRESHOLD:
            total += _partition_sum_vectorized(pmf_x, pmf_y, pmf_z)
        else:
            total += _partition_sum_python(pmf_x, pmf_y, pmf_z)
    return total


def pwp(
    net: ProbabilisticNetwork,
    comm: CommunityAssignment,
    cap: int | None = None,
) -> Estimate:
    """Partition-based exact method with subset-enumeration PMFs."""
    cap = default_world_cap() if cap is None else cap
    start = time.perf_counter()
    value = _partition_method(
        net, comm, lambda probs: pb_pmf_enumeration(probs, cap=cap), vectorize=False
    )
    elapsed = time.perf_counter() - start
    return Estimate("pwp", value, elapsed, params={"cap": cap})


# sets at or below this size take the shared-product DFT form; the
# per-entry form's cost profile only matters for large sets
_SHARED_PMF_LIMIT = 24


def _fpwp_pmf(probs: Sequence[float]) -> Pmf:
    if len(probs) <= _SHARED_PMF_LIMIT:
        return pb_pmf_dft(probs)
    return pb_pmf_dft_per_entry(probs)


def fpwp(net: ProbabilisticNetwork, comm: CommunityAssignment) -> Estimate:
    """Partition-based exact method with DFT closed-form PMFs; O(k m^3)."""
    start = time.perf_counter()
    value = _partition_method(net, comm, _fpwp_pmf, vectorize=True)
    elapsed = time.perf_counter() - start
    return Estimate("fpwp", value, elapsed)
