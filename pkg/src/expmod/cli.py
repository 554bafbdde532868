"""Command-line interface: compute, generate, bench, and serve.

Exit codes: 0 success, 2 parse/validation failure, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import SUITES, run_suite
from .errors import CapacityError, ParseError
from .fileio import (
    RESULT_HEADER,
    LabelledNetwork,
    parse_communities,
    parse_network,
    result_record,
    write_communities,
    write_network,
)
from .runner import generate_topology, probabilities_from_mode, run_method

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAPACITY = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expmod", description="Expected modularity of probabilistic networks"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="run one estimator on network files")
    compute.add_argument("--network", required=True, type=Path)
    compute.add_argument("--communities", required=True, type=Path)
    compute.add_argument(
        "--method",
        required=True,
        choices=["bruteforce", "brute_force", "sampling", "thresholding", "weighting", "pwp", "fpwp"],
    )
    compute.add_argument("--samples", type=int)
    compute.add_argument("--threshold", type=float)
    compute.add_argument("--seed", type=int, default=0)
    compute.add_argument("--cap", type=int)
    compute.add_argument("--out", type=Path)

    generate = sub.add_parser("generate", help="write a synthetic network file")
    generate.add_argument("--model", required=True, choices=["sbm", "er", "ba", "ws", "ffn"])
    generate.add_argument("--params", nargs="*", default=[], metavar="K=V")
    generate.add_argument("--prob-mode", default="uniform")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--out", required=True, type=Path)
    generate.add_argument("--communities-out", type=Path)

    bench = sub.add_parser("bench", help="run a benchmark suite, emitting CSV")
    bench.add_argument("--suite", required=True, choices=list(SUITES))
    bench.add_argument("--out", required=True, type=Path)
    bench.add_argument("--seed", type=int, default=7)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _cmd_compute(args: argparse.Namespace) -> int:
    try:
        with args.network.open() as fh:
            labelled = parse_network(fh)
        with args.communities.open() as fh:
            comm = parse_communities(fh, labelled)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        estimate = run_method(
            labelled.net,
            comm,
            args.method,
            samples=args.samples,
            threshold=args.threshold,
            seed=args.seed,
            cap=args.cap,
        )
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = RESULT_HEADER + "\n" + result_record(estimate) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    params: dict[str, float] = {}
    try:
        for item in args.params:
            key, _, raw = item.partition("=")
            if not key or not raw:
                raise ValueError(f"bad parameter {item!r}; expected key=value")
            params[key.lower()] = float(raw)
        topology, planted = generate_topology(args.model, params, seed=args.seed)
        net = probabilities_from_mode(topology, args.prob_mode, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    labelled = LabelledNetwork(net, tuple(str(i) for i in range(net.n)))
    args.out.write_text(write_network(labelled))
    if args.communities_out is not None:
        if planted is None:
            print("error: --communities-out only applies to the sbm model", file=sys.stderr)
            return EXIT_INVALID
        args.communities_out.write_text(write_communities(labelled, planted))
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        path = run_suite(args.suite, args.out, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "compute":
        return _cmd_compute(args)
    if args.command == "generate":
        return _cmd_generate(args)
    if args.command == "bench":
        return _cmd_bench(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
