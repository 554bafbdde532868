"""HTTP front end: expected-modularity computation and network generation
as a small FastAPI service.  The CLI covers the same operations for local
files; this wraps the identical dispatch for long-running or remote use."""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .errors import CapacityError, NumericalInstabilityError
from .fileio import LabelledNetwork, write_communities, write_network
from .graph import CommunityAssignment, ProbabilisticNetwork, entropy_ratio
from .runner import generate_topology, probabilities_from_mode, run_method


class EdgeIn(BaseModel):
    u: str
    v: str
    p: float = Field(gt=0.0, le=1.0)


class ComputeRequest(BaseModel):
    edges: list[EdgeIn]
    communities: dict[str, str]
    method: Literal["brute_force", "bruteforce", "sampling", "thresholding", "weighting", "pwp", "fpwp"]
    samples: int | None = Field(default=None, ge=1)
    threshold: float | None = Field(default=None, ge=0.0, le=1.0)
    seed: int = 0
    cap: int | None = Field(default=None, ge=0)


class EstimateOut(BaseModel):
    method: str
    value: float
    elapsed_seconds: float
    params: dict[str, float | int | str]
    extras: dict[str, float]


class GenerateRequest(BaseModel):
    model: Literal["sbm", "er", "ba", "ws", "ffn"]
    params: dict[str, float]
    prob_mode: str = "uniform"
    seed: int = 0


class GenerateResponse(BaseModel):
    n: int
    m: int
    entropy_ratio: float
    network_file: str
    community_file: str | None


app = FastAPI(title="expected-modularity service")


def _labelled(edges: list[EdgeIn]) -> LabelledNetwork:
    ids: dict[str, int] = {}
    triples = []
    for e in edges:
        u = ids.setdefault(e.u, len(ids))
        v = ids.setdefault(e.v, len(ids))
        triples.append((u, v, e.p))
    net = ProbabilisticNetwork.from_edges(triples, n=len(ids))
    return LabelledNetwork(net, tuple(sorted(ids, key=ids.get)))


@app.get("/health")
def health() -> dict[str, str]:
    return {"status": "ok"}


@app.post("/compute", response_model=EstimateOut)
def compute(request: ComputeRequest) -> EstimateOut:
    try:
        labelled = _labelled(request.edges)
        id_of = labelled.label_to_id()
        raw = {}
        for node, community in request.communities.items():
            if node not in id_of:
                raise ValueError(f"community map names unknown node {node!r}")
            raw[id_of[node]] = community
        if len(raw) != labelled.net.n:
            raise ValueError("community map must cover every node exactly once")
        dense: dict[str, int] = {}
        labels = [dense.setdefault(raw[i], len(dense)) for i in range(labelled.net.n)]
        comm = CommunityAssignment.from_labels(labels)
        estimate = run_method(
            labelled.net,
            comm,
            request.method,
            samples=request.samples,
            threshold=request.threshold,
            seed=request.seed,
            cap=request.cap,
        )
    except CapacityError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    except NumericalInstabilityError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return EstimateOut(
        method=estimate.method,
        value=estimate.value,
        elapsed_seconds=estimate.elapsed,
        params={k: v for k, v in estimate.params.items()},
        extras={k: float(v) for k, v in estimate.extras.items()},
    )


@app.post("/generate", response_model=GenerateResponse)
def generate(request: GenerateRequest) -> GenerateResponse:
    try:
        topology, planted = generate_topology(request.model, request.params, seed=request.seed)
        net = probabilities_from_mode(topology, request.prob_mode, seed=request.seed)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    labelled = LabelledNetwork(net, tuple(str(i) for i in range(net.n)))
    community_file = write_communities(labelled, planted) if planted else None
    return GenerateResponse(
        n=net.n,
        m=net.m,
        entropy_ratio=entropy_ratio(net) if net.m else 0.0,
        network_file=write_network(labelled),
        community_file=community_file,
    )
