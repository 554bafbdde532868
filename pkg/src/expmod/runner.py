"""Shared dispatch used by both the CLI and the HTTP service."""

from __future__ import annotations

from .estimators import (
    Estimate,
    brute_force,
    fpwp,
    pwp,
    sample_estimate,
    threshold_estimate,
    weighting_estimate,
)
from .generators import (
    SbmParams,
    Topology,
    assign_probabilities,
    gen_ba,
    gen_er,
    gen_ffn,
    gen_sbm,
    gen_ws,
)
from .graph import CommunityAssignment, ProbabilisticNetwork

METHOD_ALIASES = {
    "bruteforce": "brute_force",
    "brute_force": "brute_force",
    "sampling": "sampling",
    "thresholding": "thresholding",
    "weighting": "weighting",
    "pwp": "pwp",
    "fpwp": "fpwp",
}


def run_method(
    net: ProbabilisticNetwork,
    comm: CommunityAssignment,
    method: str,
    samples: int | None = None,
    threshold: float | None = None,
    seed: int = 0,
    cap: int | None = None,
) -> Estimate:
    name = METHOD_ALIASES.get(method.lower())
    if name is None:
        raise ValueError(f"unknown method {method!r}")
    if name == "brute_force":
        return brute_force(net, comm, cap=cap)
    if name == "sampling":
        if samples is None:
            raise ValueError("sampling requires a sample count")
        return sample_estimate(net, comm, samples, seed=seed)
    if name == "thresholding":
        if threshold is None:
            raise ValueError("thresholding requires a threshold")
        return threshold_estimate(net, comm, threshold)
    if name == "weighting":
        return weighting_estimate(net, comm)
    if name == "pwp":
        return pwp(net, comm, cap=cap)
    return fpwp(net, comm)


def _float_params(params: dict[str, float], *names: str) -> list[float]:
    missing = [name for name in names if name not in params]
    if missing:
        raise ValueError(f"missing model parameters: {', '.join(missing)}")
    return [params[name] for name in names]


def generate_topology(
    model: str, params: dict[str, float], seed: int = 0
) -> tuple[Topology, CommunityAssignment | None]:
    """Build a topology (plus planted communities for the block model)."""
    model = model.lower()
    if model == "sbm":
        k, nc, p_in, p_out = _float_params(params, "k", "nc", "p_in", "p_out")
        topology, comm = gen_sbm(SbmParams(int(k), int(nc), p_in, p_out, seed=seed))
        return topology, comm
    if model == "er":
        if "p" in params:
            return gen_er(int(params["n"]), p=params["p"], seed=seed), None
        n, m = _float_params(params, "n", "m")
        return gen_er(int(n), m=int(m), seed=seed), None
    if model == "ba":
        n, attach = _float_params(params, "n", "attach")
        return gen_ba(int(n), int(attach), seed=seed), None
    if model == "ws":
        n, degree, rewire = _float_params(params, "n", "degree", "rewire")
        return gen_ws(int(n), int(degree), rewire, seed=seed), None
    if model == "ffn":
        n, fwd_burn = _float_params(params, "n", "fwd_burn")
        return gen_ffn(int(n), fwd_burn, seed=seed), None
    raise ValueError(f"unknown model {model!r}")


def probabilities_from_mode(
    topology: Topology, prob_mode: str, seed: int = 0
) -> ProbabilisticNetwork:
    """Parse a mode string: const:<p>, entropy:<r>, or uniform."""
    if prob_mode == "uniform":
        return assign_probabilities(topology, "uniform_random", seed=seed)
    kind, _, raw = prob_mode.partition(":")
    if kind == "const" and raw:
        return assign_probabilities(topology, "constant", value=float(raw))
    if kind == "entropy" and raw:
        return assign_probabilities(topology, "entropy_target", value=float(raw))
    raise ValueError(f"bad probability mode {prob_mode!r}; use const:<p>, entropy:<r>, or uniform")
