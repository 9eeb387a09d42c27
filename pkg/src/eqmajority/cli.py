"""Command-line entry points for the experiments and the session service.

Every command prints a JSON document (CSV is available where a histogram
makes that useful). Exit codes encode the headline check of each command
so they double as regression guards in scripts.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional, Sequence

from .arena import (
    adversary_stress,
    exhaustive_sweep,
    run_vs_adversary,
    run_vs_instance,
)
from .bounds import (
    NodeBudgetExceeded,
    game_value_report,
    optimal_tree,
    reference_game_value,
)
from .model import (
    Instance,
    InvalidInstanceError,
    VERDICT_CORRECT,
    all_majority_sets,
    canonical_instance,
)
from .strategies import make_strategy, optimal_strategy, scripted_strategy

DEFAULT_PORT_ENV = "EQMAJORITY_PORT"


def _emit(doc: dict, fmt: str = "json") -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        raise ValueError(f"unsupported format {fmt}")


def _parse_values(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _parse_queries(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.split(","):
        i, j = chunk.split(":")
        out.append((int(i), int(j)))
    return out


def _instance_from_args(args) -> Instance:
    if args.values:
        values = _parse_values(args.values)
        if len(values) % 2 != 0:
            raise InvalidInstanceError("value list must have even length")
        return Instance(n=len(values) // 2, values=tuple(values))
    if args.n is None:
        raise InvalidInstanceError("provide --values or --n")
    if args.majority:
        return canonical_instance(set(_parse_values(args.majority)), args.n)
    rng = random.Random(args.seed)
    majority = rng.choice(all_majority_sets(args.n))
    return canonical_instance(majority, args.n)


def cmd_solve(args) -> int:
    try:
        inst = _instance_from_args(args)
    except (InvalidInstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = run_vs_instance(optimal_strategy(inst.n), inst, budget=args.budget)
    doc = report.to_doc()
    doc["instance"] = list(inst.values)
    doc["seed"] = args.seed
    _emit(doc)
    return 0 if report.transcript.verdict == VERDICT_CORRECT else 1


def cmd_duel(args) -> int:
    if args.queries is not None or args.output is not None:
        if args.queries is None or args.output is None:
            print("error: --queries and --output go together", file=sys.stderr)
            return 2
        strategy = scripted_strategy(args.n, _parse_queries(args.queries), args.output)
    else:
        strategy = make_strategy(args.strategy, args.n, seed=args.seed, cap=args.cap)
    report = run_vs_adversary(strategy, args.n, budget=args.budget)
    doc = report.to_doc()
    doc["strategy"] = strategy.name
    doc["seed"] = args.seed
    _emit(doc)
    return 0


def cmd_sweep(args) -> int:
    strategy = make_strategy(args.strategy, args.n, seed=args.seed, cap=args.cap)
    report = exhaustive_sweep(strategy, args.n)
    if args.format == "csv":
        print("comparisons,instances")
        for comparisons, count in sorted(report.histogram.items()):
            print(f"{comparisons},{count}")
    else:
        doc = report.to_doc()
        doc["seed"] = args.seed
        _emit(doc)
    return 0 if report.failures == 0 else 1


def cmd_stress(args) -> int:
    report = adversary_stress(
        args.n,
        args.depth,
        exhaustive=args.exhaustive,
        samples=args.samples,
        seed=args.seed,
    )
    doc = report.to_doc()
    doc["violation_count"] = len(report.violations)
    if len(report.violations) > args.max_violations_shown:
        doc["violations"] = doc["violations"][: args.max_violations_shown]
        doc["violations_truncated"] = True
    doc["seed"] = args.seed
    _emit(doc)
    return 0 if not report.violations else 1


def cmd_verify_bound(args) -> int:
    try:
        report = game_value_report(args.n, node_budget=args.node_budget)
    except NodeBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = report.to_doc()
    doc["classical_expectation"] = args.n + 2
    doc["matches_classical"] = report.value == args.n + 2
    if args.reference:
        doc["reference_value"] = reference_game_value(args.n)
        doc["reference_matches_engine"] = doc["reference_value"] == report.value
    if args.tree:
        doc["optimal_tree"] = optimal_tree(args.n, node_budget=args.node_budget).to_doc()
    _emit(doc)
    # regression guard wired to the classical n+2 expectation
    return 0 if doc["matches_classical"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(transcript_dir=args.transcript_dir)
    if args.ui_dir and os.path.isdir(args.ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=args.ui_dir, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqmajority",
        description="equality-comparison majority laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the pairing algorithm on an instance")
    p.add_argument("--values", help="comma-separated value labels, length 2n")
    p.add_argument("--n", type=int, help="generate a canonical instance for this n")
    p.add_argument("--majority", help="comma-separated majority positions")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("duel", help="play a strategy against the adversary")
    p.add_argument("--strategy", default="optimal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=32)
    p.add_argument("--queries", help="scripted queries i:j,i:j,... (with --output)")
    p.add_argument("--output", type=int, help="scripted final output position")
    p.set_defaults(func=cmd_duel)

    p = sub.add_parser("sweep", help="run a strategy on every canonical instance")
    p.add_argument("--strategy", default="optimal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=32)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stress", help="audit adversary ambiguity over query sequences")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument(
        "--sampled",
        action="store_true",
        help="draw random sequences instead of enumerating all of them",
    )
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-violations-shown", type=int, default=20)
    p.set_defaults(func=cmd_stress)

    p = sub.add_parser("verify-bound", help="exact game value by exhaustive minimax")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument(
        "--reference",
        action="store_true",
        help="also run the unpruned reference engine",
    )
    p.add_argument("--tree", action="store_true", help="emit the optimal decision tree")
    p.set_defaults(func=cmd_verify_bound)

    p = sub.add_parser("serve", help="start the interactive session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get(DEFAULT_PORT_ENV, "8000")),
    )
    p.add_argument("--transcript-dir", default=None)
    p.add_argument("--ui-dir", default=None, help="serve a built UI from this directory")
    p.add_argument("--log-level", default="info")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "stress":
        args.exhaustive = not args.sampled
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
