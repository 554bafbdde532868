"""Poisson-Binomial PMFs three ways: literal subset enumeration, an O(T^2)
convolution used as an independent oracle, and the DFT closed form."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, NumericalInstabilityError
from .graph import default_world_cap

IM_TOLERANCE = 1e-9
NEGATIVE_CLAMP = 1e-12
SUM_TOLERANCE = 1e-9

# below this many terms the per-frequency product is taken directly; above,
# it is accumulated in complex log-space to dodge under/overflow
DIRECT_PRODUCT_LIMIT = 64


@dataclass(frozen=True)
class Pmf:
    """PMF over 0..T successes of independent non-identical Bernoulli trials."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        total = math.fsum(self.probs)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"PMF sums to {total!r}, not 1")
        if any(p < 0.0 or p > 1.0 for p in self.probs):
            raise ValueError("PMF entry outside [0, 1]")

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, k: int) -> float:
        return self.probs[k]

    def mean(self) -> float:
        return math.fsum(k * p for k, p in enumerate(self.probs))


def pb_pmf_enumeration(ps: Sequence[float], cap: int | None = None) -> Pmf:
    """Entry k = sum over size-k subsets A of prod_A p * prod_notA (1-p).

    Literal and exponential on purpose: this is the form the partition
    method's exact variant uses, and its cost is part of that method's
    measured runtime profile.
    """
    cap = default_world_cap() if cap is None else cap
    t = len(ps)
    if t > cap:
        raise CapacityError(f"{t} Bernoulli terms, above the enumeration cap {cap}")
    indices = range(t)
    entries = []
    for x in range(t + 1):
        total = 0.0
        for subset in itertools.combinations(indices, x):
            chosen = set(subset)
            prod = 1.0
            for i in indices:
                prod *= ps[i] if i in chosen else 1.0 - ps[i]
            total += prod
        entries.append(total)
    return Pmf(tuple(entries))


def pb_pmf_dp(ps: Sequence[float]) -> Pmf:
    """Exact O(T^2) convolution of the [1-p, p] factors (test oracle)."""
    out = np.ones(1)
    for p in ps:
        nxt = np.zeros(out.size + 1)
        nxt[: out.size] = out * (1.0 - p)
        nxt[1:] += out * p
        out = nxt
    return Pmf(tuple(out.tolist()))


def _roots_of_unity(count: int) -> list[complex]:
    omega = 2.0 * math.pi / count
    return [cmath.exp(1j * omega * r) for r in range(count)]


def _characteristic_values_direct(
    ps: Sequence[float], roots: list[complex]
) -> list[complex]:
    """z_l = prod_i (1 + (C^l - 1) p_i) for l = 0..T, plain products."""
    values = []
    for root in roots:
        factor = root - 1.0
        z = 1.0 + 0.0j
        for p in ps:
            z *= 1.0 + factor * p
        values.append(z)
    return values


def _characteristic_values_logspace(ps: np.ndarray) -> np.ndarray:
    """Same z_l, accumulating log-magnitude and phase per frequency."""
    t = ps.size
    ls = np.arange(t + 1)
    factors = np.exp(2j * np.pi * ls / (t + 1)) - 1.0
    terms = 1.0 + factors[:, None] * ps[None, :]
    log_mag = np.log(np.abs(terms)).sum(axis=1)
    phase = np.angle(terms).sum(axis=1)
    with np.errstate(over="ignore"):
        return np.exp(log_mag) * np.exp(1j * phase)


def _dft_small(ps: Sequence[float]) -> list[complex]:
    t = len(ps)
    size = t + 1
    roots = _roots_of_unity(size)
    zs = _characteristic_values_direct(ps, roots)
    conj = [r.conjugate() for r in roots]
    out = []
    for k in range(size):
        acc = 0.0 + 0.0j
        for l, z in enumerate(zs):
            acc += conj[l * k % size] * z
        out.append(acc / size)
    return out


def _dft_large(ps: Sequence[float]) -> np.ndarray:
    arr = np.asarray(ps, dtype=float)
    t = arr.size
    zs = _characteristic_values_logspace(arr)
    grid = np.exp(-2j * np.pi * np.outer(np.arange(t + 1), np.arange(t + 1)) / (t + 1))
    return grid @ zs / (t + 1)


def pb_pmf_dft(ps: Sequence[float]) -> Pmf:
    """Closed-form PMF: Pr(X=k) = (1/(T+1)) sum_l C^{-lk} prod_i (1+(C^l-1)p_i).

    The per-frequency products are shared across entries, so the whole PMF
    costs O(T^2).
    """
    t = len(ps)
    if t == 0:
        return Pmf((1.0,))
    if t <= DIRECT_PRODUCT_LIMIT:
        raw = _dft_small(ps)
    else:
        raw = _dft_large(ps)
    return _finalize(raw)


def pb_pmf_dft_per_entry(ps: Sequence[float]) -> Pmf:
    """Same closed form, but each entry is evaluated independently.

    The inner product over the trials is recomputed for every entry, so one
    value costs O(T^2) and the full PMF O(T^3).  This is the evaluation
    order of the fast partition method, whose measured runtime is expected
    to track community count and community sizes the way that cost implies;
    pb_pmf_dft is the cheaper equivalent for standalone PMF queries.
    """
    t = len(ps)
    if t == 0:
        return Pmf((1.0,))
    if t <= 24:
        size = t + 1
        roots = _roots_of_unity(size)
        conj = [r.conjugate() for r in roots]
        raw = []
        for x in range(size):
            acc = 0.0 + 0.0j
            for l, root in enumerate(roots):
                factor = root - 1.0
                z = 1.0 + 0.0j
                for p in ps:
                    z *= 1.0 + factor * p
                acc += conj[l * x % size] * z
            raw.append(acc / size)
        return _finalize(raw)
    arr = np.asarray(ps, dtype=float)
    size = t + 1
    # entries are real, so frequencies above size // 2 mirror the lower
    # half by conjugation and only the lower half needs evaluating
    half = size // 2
    ls = np.arange(half + 1)
    roots = np.exp(2j * np.pi * ls / size)
    conj_roots = np.exp(-2j * np.pi * np.arange(size) / size)
    weights = np.full(half + 1, 2.0)
    weights[0] = 1.0
    if size % 2 == 0:
        weights[half] = 1.0
    # |1 + (C^l - 1) p| <= 1, so the direct product cannot overflow and an
    # underflowing entry is a genuine (near-)zero
    terms = 1.0 + (roots[:, None] - 1.0) * arr[None, :]
    raw = []
    with np.errstate(under="ignore"):
        for x in range(size):
            z = _row_products(terms)
            coeff = conj_roots[ls * x % size]
            raw.append(complex((weights * (coeff * z).real).sum() / size))
    return _finalize(raw)


def _row_products(matrix: np.ndarray) -> np.ndarray:
    """Product along axis 1 by pairwise folding (vectorizes better than prod)."""
    cols = matrix.shape[1]
    if cols == 1:
        return matrix[:, 0].copy()
    half = cols // 2
    current = matrix[:, :half] * matrix[:, half : 2 * half]
    if cols % 2:
        current[:, 0] *= matrix[:, -1]
    while current.shape[1] > 1:
        cols = current.shape[1]
        half = cols // 2
        folded = current[:, :half]
        np.multiply(folded, current[:, half : 2 * half], out=folded)
        if cols % 2:
            folded[:, 0] *= current[:, -1]
        current = folded
    return current[:, 0].copy()


def _finalize(raw: list[complex]) -> Pmf:
    t = len(raw) - 1
    worst = max(abs(z.imag) for z in raw)
    if worst > IM_TOLERANCE:
        worst_k = max(range(t + 1), key=lambda k: abs(raw[k].imag))
        raise NumericalInstabilityError(
            f"imaginary residual {worst:.3e} at entry {worst_k} exceeds {IM_TOLERANCE}"
        )
    entries = []
    for z in raw:
        value = z.real
        if value < 0.0:
            if value < -NEGATIVE_CLAMP:
                raise NumericalInstabilityError(
                    f"negative PMF entry {value:.3e} below clamp tolerance"
                )
            value = 0.0
        entries.append(value)
    total = math.fsum(entries)
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise NumericalInstabilityError(f"PMF sum {total!r} deviates from 1")
    return Pmf(tuple(e / total for e in entries))
