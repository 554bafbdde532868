"""Plain-text file formats: tab-separated edge lists with probabilities,
node-to-community maps, and the CSV result rows the CLI emits.

Node labels are arbitrary strings in files; internally they are normalized
to dense 0-based ids (assigned by first appearance) with the original
labels kept for output.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Any, TextIO

from .errors import ParseError
from .estimators import Estimate
from .graph import CommunityAssignment, ProbabilisticNetwork


@dataclass(frozen=True)
class LabelledNetwork:
    """A probabilistic network plus the original node labels."""

    net: ProbabilisticNetwork
    labels: tuple[str, ...]  # dense id -> original label

    def label_to_id(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}


def parse_network(text: str | TextIO) -> LabelledNetwork:
    """Parse "u<TAB>v<TAB>p" lines; '#' lines are comments."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int, float]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(lineno, f"expected 3 tab-separated fields, got {len(fields)}")
        su, sv, sp = (f.strip() for f in fields)
        try:
            p = float(sp)
        except ValueError:
            raise ParseError(lineno, f"bad probability {sp!r}") from None
        if not 0.0 < p <= 1.0:
            raise ParseError(lineno, f"probability {p} outside (0, 1]")
        if su == sv:
            raise ParseError(lineno, f"self-loop on node {su!r}")
        u = ids.setdefault(su, len(ids))
        v = ids.setdefault(sv, len(ids))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {su!r} -- {sv!r}")
        seen.add(key)
        edges.append((u, v, p))
    labels = tuple(sorted(ids, key=ids.get))
    net = ProbabilisticNetwork.from_edges(edges, n=len(ids) if ids else 0)
    return LabelledNetwork(net, labels)


def write_network(labelled: LabelledNetwork) -> str:
    """Canonical text form: edges sorted by normalized endpoint ids."""
    lines = []
    for u, v, p in labelled.net.edges:  # already canonical
        lines.append(f"{labelled.labels[u]}\t{labelled.labels[v]}\t{p:.10g}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_communities(text: str | TextIO, labelled: LabelledNetwork) -> CommunityAssignment:
    """Parse "node<TAB>community_id" lines covering every network node once."""
    stream = io.StringIO(text) if isinstance(text, str) else text
    id_of = labelled.label_to_id()
    raw_label: dict[int, str] = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(lineno, f"expected 2 tab-separated fields, got {len(fields)}")
        node, community = (f.strip() for f in fields)
        if node not in id_of:
            raise ParseError(lineno, f"unknown node {node!r}")
        nid = id_of[node]
        if nid in raw_label:
            raise ParseError(lineno, f"node {node!r} assigned twice")
        raw_label[nid] = community
    missing = [labelled.labels[i] for i in range(labelled.net.n) if i not in raw_label]
    if missing:
        raise ParseError(0, f"nodes without a community: {missing[:5]}")
    dense: dict[str, int] = {}
    labels = []
    for nid in range(labelled.net.n):
        labels.append(dense.setdefault(raw_label[nid], len(dense)))
    return CommunityAssignment.from_labels(labels)


def write_communities(labelled: LabelledNetwork, comm: CommunityAssignment) -> str:
    lines = [
        f"{labelled.labels[node]}\t{comm.labels[node]}"
        for node in range(labelled.net.n)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


RESULT_HEADER = "method,value,elapsed_seconds,params,seed"


def format_params(params: dict[str, Any]) -> str:
    return ";".join(f"{k}={v}" for k, v in sorted(params.items()) if k != "seed")


def _ten_digits(value: float) -> str:
    """Exactly 10 significant digits, trailing zeros kept."""
    if value == 0.0:
        return "0.000000000"
    digits = f"{value:.9e}"  # 1 + 9 = 10 significant digits
    mantissa, exponent = digits.split("e")
    return f"{float(digits):.{max(9 - int(exponent), 0)}f}"


def result_record(estimate: Estimate) -> str:
    """One CSV row per estimator invocation; value at 10 significant digits."""
    seed = estimate.params.get("seed", "")
    return ",".join(
        [
            estimate.method,
            _ten_digits(estimate.value),
            f"{estimate.elapsed:.6f}",
            format_params(estimate.params),
            str(seed),
        ]
    )
