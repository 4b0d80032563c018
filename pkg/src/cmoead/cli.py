"""Command-line interface: run experiments, summarize results, export fronts,
and estimate feasible ratios."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .decomposition import Scalarization
from .engine import EngineConfig
from .harness import (
    ALGORITHM_NAMES,
    ENV_OUT_DIR,
    ExperimentConfig,
    _render_summary_csv,
    load_metrics,
    resolve_output_dir,
    run_experiment,
    summarize,
)
from .problems import PROBLEM_NAMES, estimate_feasible_ratio, problem_by_name
from .problems.fronts import reference_front, save_front


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cmoead",
        description="Constrained decomposition-based multi-objective optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a problems x algorithms x seeds batch")
    p_run.add_argument("--problem", default="all", help="problem name or 'all'")
    p_run.add_argument(
        "--algo",
        default="iepsilon",
        help="comma-separated algorithm names or 'all' "
        f"(choices: {', '.join(ALGORITHM_NAMES)})",
    )
    p_run.add_argument("--pop", type=int, default=300, help="population size")
    p_run.add_argument(
        "--max-evals",
        type=int,
        default=None,
        help="evaluation budget per run (default: per-problem standard budget)",
    )
    p_run.add_argument("--runs", type=int, default=30, help="independent runs per cell")
    p_run.add_argument("--seed", type=int, default=0, help="base seed (run i uses seed+i)")
    p_run.add_argument(
        "--out",
        default=None,
        help=f"output directory (default: ${ENV_OUT_DIR})",
    )
    p_run.add_argument("--metric", default="igd,hv", help="comma-separated metrics")
    p_run.add_argument(
        "--scalarization",
        default="tch",
        choices=[s.value for s in Scalarization],
        help="aggregation function",
    )
    p_run.add_argument("--z-samples", type=int, default=100, help="gripper stroke grid size")
    p_run.add_argument("--parallel", type=int, default=1, help="worker processes")
    p_run.add_argument("--front-size", type=int, default=None, help="reference front size")
    p_run.set_defaults(func=cmd_run)

    p_sum = sub.add_parser("summarize", help="rebuild the summary from per-run records")
    p_sum.add_argument("--in", dest="in_dir", required=True, help="experiment directory")
    p_sum.set_defaults(func=cmd_summarize)

    p_front = sub.add_parser("reffront", help="export a reference front")
    p_front.add_argument("--problem", required=True, help="problem name")
    p_front.add_argument("--size", type=int, default=None, help="number of points")
    p_front.add_argument("--out", required=True, help="output file")
    p_front.set_defaults(func=cmd_reffront)

    p_rfs = sub.add_parser("rfs", help="estimate a problem's feasible sampling ratio")
    p_rfs.add_argument("--problem", required=True, help="problem name")
    p_rfs.add_argument("--samples", type=int, default=100000, help="uniform samples")
    p_rfs.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_rfs.set_defaults(func=cmd_rfs)
    return parser


def _split_csv(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def cmd_run(args: argparse.Namespace) -> int:
    problems = PROBLEM_NAMES if args.problem == "all" else _split_csv(args.problem)
    algorithms = ALGORITHM_NAMES if args.algo == "all" else _split_csv(args.algo)
    engine = EngineConfig(
        N=args.pop,
        seed=args.seed,
        scalarization=Scalarization(args.scalarization),
    )
    cfg = ExperimentConfig(
        problems=tuple(problems),
        algorithms=tuple(algorithms),
        runs=args.runs,
        engine=engine,
        output_dir=args.out,
        metrics=_split_csv(args.metric),
        parallel_runs=args.parallel,
        front_size=args.front_size,
        max_evaluations=args.max_evals,
        z_samples=args.z_samples,
    )
    rows, manifest = run_experiment(cfg)
    sys.stdout.write(_render_summary_csv(rows))
    if manifest["failures"]:
        sys.stderr.write(f"{manifest['failures']} cell(s) failed; see manifest.json\n")
        return 1
    return 0


def cmd_summarize(args: argparse.Namespace) -> int:
    out_dir = Path(args.in_dir)
    per_run = load_metrics(out_dir)
    if not per_run:
        sys.stderr.write(f"no per-run metric records under {out_dir}\n")
        return 1
    reference = None
    significance = 0.05
    expected_runs = None
    orders: dict[str, tuple[str, ...] | None] = {
        "problems": None,
        "algorithms": None,
        "metrics": None,
    }
    manifest_file = out_dir / "manifest.json"
    if manifest_file.is_file():
        manifest = json.loads(manifest_file.read_text())
        reference = manifest.get("reference_algorithm")
        significance = manifest.get("significance", significance)
        expected_runs = manifest.get("runs")
        for key in orders:
            if manifest.get(key):
                orders[key] = tuple(manifest[key])
    rows = summarize(
        per_run,
        reference=reference,
        significance=significance,
        expected_runs=expected_runs,
        problem_order=orders["problems"],
        algorithm_order=orders["algorithms"],
        metric_order=orders["metrics"],
    )
    sys.stdout.write(_render_summary_csv(rows))
    return 0


def cmd_reffront(args: argparse.Namespace) -> int:
    front = reference_front(args.problem, args.size)
    save_front(front, args.out)
    sys.stdout.write(f"wrote {front.shape[0]} points to {args.out}\n")
    return 0


def cmd_rfs(args: argparse.Namespace) -> int:
    problem = problem_by_name(args.problem)
    ratio = estimate_feasible_ratio(
        problem, args.samples, np.random.default_rng(args.seed)
    )
    sys.stdout.write(f"{problem.name} feasible_ratio {ratio:.6g} ({args.samples} samples)\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
