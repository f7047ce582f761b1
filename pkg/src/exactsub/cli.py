"""Command-line entry point: sample, verify-exact, decompose, estimate-count, gen."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiment import (
    ExperimentConfig,
    cmd_decompose,
    cmd_estimate_count,
    cmd_sample,
    cmd_verify_exact,
    default_seed,
    to_csv,
    to_json,
)
from .generators import graph_from_spec
from .graph import GraphFormatError
from .pattern import PatternError
from .verify import SizeError


def _common(p: argparse.ArgumentParser, *, trials: int = 1000) -> None:
    p.add_argument("--graph", required=True, help="edge-list file or generator spec (K6, er:n=12,p=0.4,seed=3)")
    p.add_argument("--pattern", required=True, help="K3, C5, S3, P4, 2K3, K3+S1 or @file.edges")
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--seed", type=int, default=None, help="default: $SAMPLER_SEED or a fixed constant")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exactsub", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="run the uniform sampler repeatedly and report")
    _common(p)
    p.add_argument("--xh", default="exact", help="exact | estimate | <positive number>")
    p.add_argument("--no-verify", action="store_true", help="report only; do not gate the exit code")
    p.add_argument("--no-full-scan", action="store_true", help="never fall back to reading the whole graph")
    p.add_argument("--timing", action="store_true", help="add wall time (breaks byte-identical replays)")

    p = sub.add_parser("verify-exact", help="exact per-copy probabilities by transcript enumeration")
    _common(p, trials=1)
    p.add_argument("--mutate", choices=("skip-coin", "skip-order"), default=None)

    p = sub.add_parser("decompose", help="odd-cycle/star decomposition, rho and f of a pattern")
    p.add_argument("pattern")
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("estimate-count", help="estimate #H from the success rate")
    _common(p, trials=100_000)

    p = sub.add_parser("gen", help="write a generator graph as an edge list")
    p.add_argument("spec", help="Kn, Cn, Sn, Pn, er, lollipop")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--tail", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=Path, default=None)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _config(args, **extra) -> ExperimentConfig:
    return ExperimentConfig(
        graph=args.graph,
        pattern=args.pattern,
        trials=args.trials,
        seed=args.seed if args.seed is not None else default_seed(),
        fmt=args.fmt,
        threads=args.threads,
        **extra,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            seed = args.seed if args.seed is not None else default_seed()
            g = graph_from_spec(args.spec, n=args.n, p=args.p, seed=seed, tail=args.tail)
            _emit(g.to_text(), args.out)
            return 0
        if args.command == "decompose":
            report = cmd_decompose(args.pattern)
        elif args.command == "sample":
            report = cmd_sample(
                _config(
                    args,
                    xh=args.xh,
                    verify=not args.no_verify,
                    allow_full_scan=not args.no_full_scan,
                    timing=args.timing,
                )
            )
        elif args.command == "verify-exact":
            report = cmd_verify_exact(_config(args, mutation=args.mutate))
        else:
            report = cmd_estimate_count(_config(args))
    except SizeError as exc:
        print(f"error: {exc}; use a smaller graph or pattern (2m <= 40, |V_H| <= 8, n <= 40)", file=sys.stderr)
        return 2
    except (GraphFormatError, PatternError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(to_json(report) if args.fmt == "json" else to_csv(report), args.out)
    return 0 if report.get("passed", True) else 1


if __name__ == "__main__":
    raise SystemExit(main())
