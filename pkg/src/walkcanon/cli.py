"""``walkcanon`` command line.

Exit codes: 0 success, 1 negative result (give-up, distinguished, failed
check), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .experiments import EXPERIMENTS, ExperimentConfig, default_workers, run_experiment
from .gadget import build_gadget, build_gadget_prime, verify_gadget
from .graph import Graph, SizeError, parse_graph, to_adjlist, to_graph6
from .refinement import cr_distinguishes, refine
from .walks import canonize_walk3, walk_matrix, walk_signature, wm_equivalent

SCHEMAS = {
    "canon": "walkcanon.canon/1",
    "refine": "walkcanon.refine/1",
    "walks": "walkcanon.walks/1",
    "gadget": "walkcanon.gadget-report/1",
}


class UsageError(Exception):
    pass


def _load(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except (ValueError, SizeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_canon(args) -> int:
    g = _load(args.file)
    try:
        labeling = canonize_walk3(g)
    except (ValueError, SizeError) as exc:
        raise UsageError(str(exc)) from None
    _emit({"schema": SCHEMAS["canon"], **labeling.to_json()})
    return 0 if labeling.discrete else 1


def cmd_iso(args) -> int:
    g, h = _load(args.file1), _load(args.file2)
    if args.method == "cr":
        separated = cr_distinguishes(g, None, h, None)
        print("distinguished by cr" if separated else "not distinguished by cr")
        return 1 if separated else 0
    if max(g.n, h.n) > args.max_n:
        raise UsageError(f"walk-matrix comparison is limited to n <= {args.max_n}")
    same = wm_equivalent(g, h)
    print("equivalent" if same else "not equivalent")
    return 0 if same else 1


def cmd_refine(args) -> int:
    g = _load(args.file)
    if args.rounds is not None and args.rounds < 0:
        raise UsageError("--rounds must be non-negative")
    trace = refine(g, max_rounds=args.rounds)
    _emit({"schema": SCHEMAS["refine"], "rounds_run": len(trace.rounds) - 1, **trace.to_json()})
    return 0


def cmd_walks(args) -> int:
    g = _load(args.file)
    if args.full:
        if g.n > args.max_n:
            raise UsageError(f"full walk matrix is limited to n <= {args.max_n}")
        rows = [[str(v) for v in row] for row in walk_matrix(g).rows] if g.n else []
        _emit({"schema": SCHEMAS["walks"], "full": True, "rows": rows})
        return 0
    try:
        sig = walk_signature(g, args.k)
    except (ValueError, SizeError) as exc:
        raise UsageError(str(exc)) from None
    _emit({"schema": SCHEMAS["walks"], "full": False, "k": sig.k, "rows": sig.rows.tolist()})
    return 0


def cmd_gadget(args) -> int:
    if args.action == "build":
        g = build_gadget_prime() if args.prime else build_gadget().graph
        print(to_graph6(g))
        return 0
    report = verify_gadget()
    _emit({"schema": SCHEMAS["gadget"], **report.to_json()})
    return 0 if report.all_passed else 1


def cmd_experiment(args) -> int:
    try:
        cfg = ExperimentConfig(n=args.n, p=args.p, samples=args.samples, seed=args.seed, experiment=args.experiment)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    report = run_experiment(cfg, workers=args.workers)
    if args.out:
        json_path, csv_path = report.write(args.out)
        print(f"wrote {json_path} and {csv_path}", file=sys.stderr)
    else:
        _emit(report.to_json())
    return 0


def cmd_convert(args) -> int:
    g = _load(args.file)
    if args.to == "graph6":
        try:
            print(to_graph6(g))
        except SizeError as exc:
            raise UsageError(str(exc)) from None
    else:
        sys.stdout.write(to_adjlist(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walkcanon", description="Walk-count canonization and color refinement tools.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canon", help="three-walk canonical labeling")
    p.add_argument("file")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", help="compare two graphs by color refinement or walk matrices")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--method", choices=("cr", "wm"), default="cr")
    p.add_argument("--max-n", type=int, default=512, help="size cap for --method wm")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("refine", help="stable (or round-limited) color refinement")
    p.add_argument("file")
    p.add_argument("--rounds", type=int)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("walks", help="walk-count signature or full walk matrix")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--k", type=int, default=3)
    mode.add_argument("--full", action="store_true")
    p.add_argument("--max-n", type=int, default=512, help="size cap for --full")
    p.set_defaults(func=cmd_walks)

    p = sub.add_parser("gadget", help="build or verify the separating gadget")
    p.add_argument("action", choices=("build", "verify"))
    p.add_argument("--prime", action="store_true", help="build the twin graph instead")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("experiment", help="Monte Carlo runs over G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--experiment", choices=EXPERIMENTS, default="w3")
    p.add_argument("--out", help="write <out>.json and <out>.csv instead of JSON on stdout")
    p.add_argument("--workers", type=int, default=None, help="default: $WALKCANON_WORKERS or 1")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("convert", help="re-serialize a graph")
    p.add_argument("file")
    p.add_argument("--to", choices=("graph6", "adjlist"), required=True)
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 0) is None:
        try:
            args.workers = default_workers()
        except ValueError:
            parser.error("WALKCANON_WORKERS must be an integer")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"walkcanon: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
