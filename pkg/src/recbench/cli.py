"""Command-line front end.

Three subcommands share a data-loading core: ``recommend`` prints ranked
movies for one user, ``evaluate`` scores algorithms on a held-out split, and
``sweep`` repeats the evaluation over a range of preference lower bounds
(optionally rendering a figure next to the CSV).

Exit codes: 0 on success, 2 for unusable input (bad flags, malformed data,
unknown ids, invalid fractions), 1 for errors during computation.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import RecbenchError, UnknownIdError
from .evaluation import (
    ALGORITHMS,
    SplitSpec,
    evaluate,
    make_split,
    sweep,
    sweep_bounds,
    write_report_csv,
)
from .plotting import render_sweep_figure
from .raps import PreferenceInterval, raps_recommend, top_n
from .ratings import load_movielens
from .slope_one import slope_one_recommend

__all__ = ["RunConfig", "build_parser", "run", "main"]


@dataclass
class RunConfig:
    """Everything a single invocation needs; one field per flag."""

    command: str
    data: str
    algorithm: str = "both"
    left: float = 4.0
    right: float | None = None
    min_rating: int = 1
    max_rating: int = 5
    test_fraction: float = 0.2
    visible_fraction: float = 0.8
    seed: int = 42
    convention: int = 1
    top_n: int | None = None
    target_user: int | None = None
    include_rated: bool = False
    output: str | None = None
    plot: str | None = None
    sweep_from: float = 3.0
    sweep_to: float = 5.0
    sweep_step: float = 0.01


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recbench",
        description="Interval-pattern and rating-delta movie recommenders, "
        "with a hold-out evaluation harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, with_left=True):
        p.add_argument("--data", required=True, metavar="FILE",
                       help="ratings file: user, movie, rating, timestamp (tab-separated)")
        p.add_argument("--min-rating", type=int, default=1, help="smallest legal rating")
        p.add_argument("--max-rating", type=int, default=5, help="largest legal rating")
        if with_left:
            p.add_argument("--left", type=float, default=4.0,
                           help="preference band lower bound (default 4)")
        p.add_argument("--right", type=float, default=None,
                       help="preference band upper bound (default: --max-rating)")
        p.add_argument("--output", metavar="FILE", default=None,
                       help="write the report here instead of stdout")

    def add_split(p):
        p.add_argument("--algorithm", choices=(*ALGORITHMS, "both"), default="both")
        p.add_argument("--convention", type=int, choices=(1, 2), default=1,
                       help="how empty relevant/retrieved sets score (default 1)")
        p.add_argument("--test-fraction", type=float, default=0.2,
                       help="share of users held out for testing")
        p.add_argument("--visible-fraction", type=float, default=0.8,
                       help="share of each test user's ratings the algorithms may see")
        p.add_argument("--seed", type=int, default=42, help="split sampling seed")

    rec = sub.add_parser("recommend", help="rank movies for one user")
    add_common(rec)
    rec.add_argument("--target-user", type=int, required=True)
    rec.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    rec.add_argument("--top-n", type=int, default=None, help="keep only the best N rows")
    rec.add_argument("--include-rated", action="store_true",
                     help="keep movies the user has already rated (pattern recommender only)")

    ev = sub.add_parser("evaluate", help="precision/recall on a held-out split")
    add_common(ev)
    add_split(ev)

    sw = sub.add_parser("sweep", help="evaluate over a range of preference lower bounds")
    add_common(sw, with_left=False)
    add_split(sw)
    sw.add_argument("--sweep-from", type=float, default=3.0, help="first lower bound")
    sw.add_argument("--sweep-to", type=float, default=5.0, help="last lower bound")
    sw.add_argument("--sweep-step", type=float, default=0.01, help="lower bound increment")
    sw.add_argument("--plot", metavar="FILE", default=None,
                    help="also render a precision/recall figure to this file")
    return parser


def _write_atomic(path: str, data: bytes) -> None:
    """Write via a sibling temp file and rename, so readers never see a
    half-written report."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def _pref(config: RunConfig) -> PreferenceInterval:
    right = config.max_rating if config.right is None else config.right
    return PreferenceInterval(config.left, right)


def _run_recommend(config: RunConfig, matrix) -> str:
    if config.top_n is not None and config.top_n < 0:
        raise ValueError(f"--top-n must be non-negative, got {config.top_n}")
    pref = _pref(config)
    lines = ["movie,score"]
    if config.algorithm == "raps":
        result = raps_recommend(
            matrix, config.target_user, pref, exclude_rated=not config.include_rated
        )
        lines += [f"{movie},{score}" for movie, score in top_n(result, config.top_n)]
    else:
        if config.include_rated:
            raise ValueError("--include-rated only applies to the pattern recommender")
        ranked = sorted(
            slope_one_recommend(matrix, config.target_user, pref).values(),
            key=lambda p: (-p.clamped, p.movie),
        )[: config.top_n]
        lines += [f"{p.movie},{p.clamped:.6f}" for p in ranked]
    return "\n".join(lines) + "\n"


def _algorithms(config: RunConfig) -> tuple[str, ...]:
    return ALGORITHMS if config.algorithm == "both" else (config.algorithm,)


def _conventions(config: RunConfig) -> tuple[str, ...]:
    try:
        return {1: ("type1",), 2: ("type2",)}[config.convention]
    except KeyError:
        raise ValueError(f"--convention must be 1 or 2, got {config.convention!r}") from None


def _split_spec(config: RunConfig) -> SplitSpec:
    return SplitSpec(
        test_fraction=config.test_fraction,
        visible_fraction=config.visible_fraction,
        seed=config.seed,
    )


def _run_evaluate(config: RunConfig, matrix) -> str:
    split = make_split(matrix, _split_spec(config))
    pref = _pref(config)
    reports = [
        report
        for algorithm in _algorithms(config)
        for report in evaluate(split, algorithm, pref, conventions=_conventions(config))
    ]
    return write_report_csv(reports)


def _run_sweep(config: RunConfig, matrix) -> str:
    bounds = sweep_bounds(config.sweep_from, config.sweep_to, config.sweep_step)
    right = config.max_rating if config.right is None else config.right
    reports = sweep(
        matrix,
        bounds,
        _split_spec(config),
        right=right,
        algorithms=_algorithms(config),
        conventions=_conventions(config),
    )
    if config.plot:
        fmt = Path(config.plot).suffix.lstrip(".") or "png"
        _write_atomic(config.plot, render_sweep_figure(reports, fmt))
    return write_report_csv(reports)


def run(config: RunConfig) -> str:
    """Execute one invocation and return its delimited report; also writes
    the report (and any figure) to disk when configured to."""
    matrix = load_movielens(
        config.data, min_border=config.min_rating, max_border=config.max_rating
    )
    if config.command == "recommend":
        payload = _run_recommend(config, matrix)
    elif config.command == "evaluate":
        payload = _run_evaluate(config, matrix)
    elif config.command == "sweep":
        payload = _run_sweep(config, matrix)
    else:
        raise ValueError(f"unknown command {config.command!r}")
    if config.output:
        _write_atomic(config.output, payload.encode())
    return payload


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    config = RunConfig(**vars(args))
    try:
        payload = run(config)
    except (ValueError, UnknownIdError, OSError) as exc:
        print(f"recbench: error: {exc}", file=sys.stderr)
        return 2
    except RecbenchError as exc:
        print(f"recbench: error: {exc}", file=sys.stderr)
        return 1
    if not config.output:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
