"""Command-line entry point.

Subcommands: gen, enumerate, reconstruct, verify, abstract-kn, draw.
Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .enumeration import DEFAULT_MAX_SSTS, Sst, enumerate_ssts
from .errors import CapExceeded, TreegraphError
from .harness import RunReport, run_abstract, run_enumerate, run_reconstruct
from .instances import MODES, format_points, generate_instance, load_points
from .svg import render_svg

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(report: RunReport, out: str | None) -> int:
    _write(report.to_json(), out)
    return EXIT_PASS if report.verdict == "PASS" else EXIT_FAIL


def _load(args: argparse.Namespace):
    if args.points:
        return load_points(args.points)
    if args.n is None:
        raise TreegraphError("provide --points FILE or --n with --seed")
    return generate_instance(args.n, args.seed, args.mode)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treegraph",
        description=(
            "Build the tree graph of a planar point set and recover its "
            "crossing structure from the abstract graph alone."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--points", help="instance file (one 'x y' per line)")
        p.add_argument("--n", type=int, help="generated instance size")
        p.add_argument("--seed", type=int, default=0, help="generation seed")
        p.add_argument("--mode", choices=MODES, default="random")

    p = sub.add_parser("gen", help="generate a point-set instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="random")
    p.add_argument("--out")

    p = sub.add_parser("enumerate", help="enumerate non-crossing spanning trees")
    add_instance_flags(p)
    p.add_argument("--max-ssts", type=int, default=DEFAULT_MAX_SSTS)
    p.add_argument("--out")

    p = sub.add_parser(
        "reconstruct",
        help="blind crossing-structure recovery, verified against truth",
    )
    add_instance_flags(p)
    p.add_argument("--shuffle-seed", type=int, default=0)
    p.add_argument("--max-ssts", type=int, default=DEFAULT_MAX_SSTS)
    p.add_argument(
        "--fast",
        action="store_true",
        help="skip the deep structural checks",
    )
    p.add_argument("--out")

    p = sub.add_parser(
        "verify", help="full invariant suite (reconstruct with all checks)"
    )
    add_instance_flags(p)
    p.add_argument("--shuffle-seed", type=int, default=0)
    p.add_argument("--max-ssts", type=int, default=DEFAULT_MAX_SSTS)
    p.add_argument("--out")

    p = sub.add_parser(
        "abstract-kn", help="complete-graph suite: tree recovery, automorphisms"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shuffle-seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("draw", help="render an instance to SVG")
    add_instance_flags(p)
    p.add_argument(
        "--tree",
        type=int,
        help="overlay the i-th non-crossing spanning tree (canonical order)",
    )
    p.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            ps = generate_instance(args.n, args.seed, args.mode)
            header = f"generated n={args.n} seed={args.seed} mode={args.mode}"
            _write(format_points(ps, header), args.out)
            return EXIT_PASS
        if args.command == "enumerate":
            ps = _load(args)
            report, _trees = run_enumerate(ps, args.max_ssts)
            return _emit_report(report, args.out)
        if args.command == "reconstruct":
            ps = _load(args)
            report = run_reconstruct(
                ps,
                shuffle_seed=args.shuffle_seed,
                max_ssts=args.max_ssts,
                deep_checks=not args.fast,
            )
            return _emit_report(report, args.out)
        if args.command == "verify":
            ps = _load(args)
            report = run_reconstruct(
                ps,
                shuffle_seed=args.shuffle_seed,
                max_ssts=args.max_ssts,
                deep_checks=True,
            )
            return _emit_report(report, args.out)
        if args.command == "abstract-kn":
            report = run_abstract(args.n, shuffle_seed=args.shuffle_seed)
            return _emit_report(report, args.out)
        if args.command == "draw":
            ps = _load(args)
            tree: Sst | None = None
            if args.tree is not None:
                trees = enumerate_ssts(ps)
                if not 0 <= args.tree < len(trees):
                    raise TreegraphError(
                        f"--tree index {args.tree} out of range 0..{len(trees) - 1}"
                    )
                tree = trees[args.tree]
            _write(render_svg(ps, tree=tree), args.out)
            return EXIT_PASS
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except TreegraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
