"""Batch experiments across problems, algorithms, and seeds, with persistence,
rank-sum significance testing, and summary tables."""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb, erfc, sqrt
from pathlib import Path

import numpy as np
from scipy.stats import rankdata

from .constraints import PolicyKind, UpdatePolicy
from .engine import EngineConfig, run
from .metrics import hypervolume, igd, reference_point
from .problems import problem_by_name
from .problems.fronts import front_path, load_front, reference_front, save_front

ALGORITHM_NAMES = tuple(kind.value for kind in PolicyKind)
DEFAULT_BUDGET = 300000
GRIPPER_BUDGET = 600000
ENV_OUT_DIR = "CMOEAD_OUT_DIR"
EXACT_MAX_N = 12
FLOAT_FORMAT = "%.17g"


@dataclass
class ExperimentConfig:
    """One batch: problems x algorithms x runs, seeded base_seed + run_index."""

    problems: tuple[str, ...]
    algorithms: tuple[str, ...] = ("iepsilon",)
    runs: int = 30
    engine: EngineConfig = field(default_factory=EngineConfig)
    output_dir: str | Path | None = None
    metrics: tuple[str, ...] = ("igd", "hv")
    parallel_runs: int = 1
    front_size: int | None = None
    max_evaluations: int | None = None
    z_samples: int = 100
    significance: float = 0.05


@dataclass
class SummaryRow:
    problem: str
    algorithm: str
    metric: str
    mean: float
    std: float
    n_runs: int
    best: bool
    significance: str
    partial: bool = False


def resolve_output_dir(path_like: str | Path | None) -> Path:
    """Explicit path, else the CMOEAD_OUT_DIR environment variable."""
    if path_like is not None:
        return Path(path_like)
    env = os.environ.get(ENV_OUT_DIR)
    if env:
        return Path(env)
    raise ValueError(f"no output directory given and {ENV_OUT_DIR} is unset")


def budget_for(problem_name: str, explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    return GRIPPER_BUDGET if problem_name == "gripper" else DEFAULT_BUDGET


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(f"{path.name}.tmp-{os.getpid()}")
    tmp.write_text(text)
    os.replace(tmp, path)


def _run_cell(args: tuple) -> dict:
    """Worker for one (problem, algorithm, run_index) cell; writes its own files."""
    (
        problem_name,
        algorithm,
        run_index,
        engine_cfg,
        out_dir,
        metric_names,
        front_file,
        z_samples,
    ) = args
    cell = {
        "problem": problem_name,
        "algorithm": algorithm,
        "run_index": run_index,
        "seed": engine_cfg.seed,
        "status": "ok",
        "notes": [],
        "metrics": {},
    }
    try:
        problem = problem_by_name(problem_name, z_samples=z_samples)
        result = run(problem, engine_cfg)
        archive_objs = (
            np.array([s.objectives for s in result.archive])
            if result.archive
            else np.empty((0, problem.m))
        )
        run_dir = Path(out_dir) / "runs" / problem_name / algorithm
        run_dir.mkdir(parents=True, exist_ok=True)
        _write_archive_csv(run_dir / f"run_{run_index}.csv", result.archive, problem)

        values: dict[str, float] = {}
        front = load_front(front_file) if front_file is not None else None
        for name in metric_names:
            if name == "igd":
                if front is None:
                    cell["notes"].append("igd skipped: no reference front")
                    continue
                values["igd"] = igd(front, archive_objs)
            elif name == "hv":
                z_r = reference_point(front, problem_name) if front is not None else reference_point(
                    np.empty((0, problem.m)), problem_name
                )
                values["hv"] = hypervolume(archive_objs, z_r)
            else:
                raise ValueError(f"unknown metric: {name!r}")
        values["evaluations"] = float(result.evaluations_used)
        lines = [f"{name} {FLOAT_FORMAT % value}" for name, value in values.items()]
        _atomic_write_text(run_dir / f"run_{run_index}_metrics.txt", "\n".join(lines) + "\n")
        cell["metrics"] = values
    except Exception as exc:  # per-cell failure is recorded, not fatal
        cell["status"] = "failed"
        cell["notes"].append(f"{type(exc).__name__}: {exc}")
    return cell


def _write_archive_csv(path: Path, archive: list, problem) -> None:
    header = (
        [f"x_{i + 1}" for i in range(problem.n)]
        + [f"f_{i + 1}" for i in range(problem.m)]
        + ["phi"]
    )
    if archive:
        rows = np.array(
            [np.concatenate([s.x, s.objectives, [s.violation]]) for s in archive]
        )
        keys = rows[:, problem.n : problem.n + problem.m]
        order = np.lexsort(np.hstack([keys, rows[:, : problem.n]]).T[::-1])
        rows = rows[order]
    else:
        rows = np.empty((0, problem.n + problem.m + 1))
    body = "\n".join(",".join(FLOAT_FORMAT % v for v in row) for row in rows)
    text = ",".join(header) + ("\n" + body if body else "") + "\n"
    _atomic_write_text(path, text)


def run_experiment(cfg: ExperimentConfig) -> tuple[list[SummaryRow], dict]:
    """Execute all cells, persist per-run records, and build the summary table.

    Returns the summary rows and the manifest (also written to manifest.json).
    Per-cell failures are recorded in the manifest; the experiment continues.
    """
    out_dir = resolve_output_dir(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "fronts").mkdir(exist_ok=True)

    front_files: dict[str, Path | None] = {}
    for name in cfg.problems:
        if name == "gripper":
            front_files[name] = None
            continue
        front = reference_front(name, cfg.front_size)
        path = front_path(out_dir / "fronts", name)
        save_front(front, path)
        front_files[name] = path

    tasks = []
    for problem_name in cfg.problems:
        budget = budget_for(problem_name, cfg.max_evaluations)
        for algorithm in cfg.algorithms:
            if algorithm not in ALGORITHM_NAMES:
                raise ValueError(f"unknown algorithm: {algorithm!r}")
            for run_index in range(cfg.runs):
                engine_cfg = replace(
                    cfg.engine,
                    seed=cfg.engine.seed + run_index,
                    max_evaluations=budget,
                    policy=UpdatePolicy(
                        kind=PolicyKind(algorithm), sr_pf=cfg.engine.policy.sr_pf
                    ),
                )
                tasks.append(
                    (
                        problem_name,
                        algorithm,
                        run_index,
                        engine_cfg,
                        str(out_dir),
                        tuple(cfg.metrics),
                        front_files[problem_name],
                        cfg.z_samples,
                    )
                )

    if cfg.parallel_runs > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallel_runs) as pool:
            cells = list(pool.map(_run_cell, tasks))
    else:
        cells = [_run_cell(task) for task in tasks]

    per_run: dict[tuple[str, str, str], list[float]] = {}
    for cell in cells:
        for metric in cfg.metrics:
            if cell["status"] == "ok" and metric in cell["metrics"]:
                key = (cell["problem"], cell["algorithm"], metric)
                per_run.setdefault(key, []).append(cell["metrics"][metric])

    reference = cfg.algorithms[0]
    rows = summarize(
        per_run,
        reference=reference,
        significance=cfg.significance,
        expected_runs=cfg.runs,
        problem_order=cfg.problems,
        algorithm_order=cfg.algorithms,
        metric_order=cfg.metrics,
    )
    _atomic_write_text(out_dir / "summary.csv", _render_summary_csv(rows))

    manifest = {
        "problems": list(cfg.problems),
        "algorithms": list(cfg.algorithms),
        "runs": cfg.runs,
        "metrics": list(cfg.metrics),
        "base_seed": cfg.engine.seed,
        "budgets": {name: budget_for(name, cfg.max_evaluations) for name in cfg.problems},
        "front_size": cfg.front_size,
        "z_samples": cfg.z_samples,
        "significance": cfg.significance,
        "reference_algorithm": reference,
        "cells": [
            {key: cell[key] for key in ("problem", "algorithm", "run_index", "seed", "status", "notes")}
            for cell in cells
        ],
        "failures": sum(1 for cell in cells if cell["status"] == "failed"),
    }
    _atomic_write_text(out_dir / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    return rows, manifest


def _render_summary_csv(rows: list[SummaryRow]) -> str:
    header = "problem,algorithm,metric,mean,std,n_runs,best,significance,partial"
    lines = [header]
    for row in rows:
        lines.append(
            ",".join(
                [
                    row.problem,
                    row.algorithm,
                    row.metric,
                    FLOAT_FORMAT % row.mean,
                    FLOAT_FORMAT % row.std,
                    str(row.n_runs),
                    str(int(row.best)),
                    row.significance,
                    str(int(row.partial)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def load_metrics(out_dir: str | Path) -> dict[tuple[str, str, str], list[float]]:
    """Collect per-run metric values from an experiment directory."""
    per_run: dict[tuple[str, str, str], list[float]] = {}
    root = Path(out_dir) / "runs"
    if not root.is_dir():
        return per_run
    for problem_dir in sorted(root.iterdir()):
        for algo_dir in sorted(p for p in problem_dir.iterdir() if p.is_dir()):
            files = sorted(
                algo_dir.glob("run_*_metrics.txt"),
                key=lambda p: int(p.name.split("_")[1]),
            )
            for path in files:
                for line in path.read_text().splitlines():
                    name, value = line.split()
                    if name == "evaluations":
                        continue
                    key = (problem_dir.name, algo_dir.name, name)
                    per_run.setdefault(key, []).append(float(value))
    return per_run


def lower_is_better(metric: str) -> bool:
    return metric != "hv"


def summarize(
    per_run: dict[tuple[str, str, str], list[float]],
    reference: str | None = None,
    significance: float = 0.05,
    expected_runs: int | None = None,
    problem_order: tuple[str, ...] | None = None,
    algorithm_order: tuple[str, ...] | None = None,
    metric_order: tuple[str, ...] | None = None,
) -> list[SummaryRow]:
    """Mean/std per cell, best-mean markers, and rank-sum verdicts vs the reference."""
    problems = list(problem_order or sorted({k[0] for k in per_run}))
    algorithms = list(algorithm_order or sorted({k[1] for k in per_run}))
    metrics = list(metric_order or sorted({k[2] for k in per_run}))
    if reference is None and algorithms:
        reference = "iepsilon" if "iepsilon" in algorithms else algorithms[0]

    rows: list[SummaryRow] = []
    for problem in problems:
        for metric in metrics:
            cells = {
                algo: per_run[(problem, algo, metric)]
                for algo in algorithms
                if (problem, algo, metric) in per_run
            }
            if not cells:
                continue
            with np.errstate(invalid="ignore"):
                means = {algo: float(np.mean(values)) for algo, values in cells.items()}
                stds = {
                    algo: float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
                    for algo, values in cells.items()
                }
            finite_means = {a: v for a, v in means.items() if np.isfinite(v)}
            pool = finite_means if finite_means else means
            best_mean = min(pool.values()) if lower_is_better(metric) else max(pool.values())
            for algo in algorithms:
                if algo not in cells:
                    continue
                values = cells[algo]
                if algo == reference:
                    verdict = "reference"
                elif reference in cells:
                    _, verdict = wilcoxon_rank_sum(
                        values,
                        cells[reference],
                        significance=significance,
                        lower_is_better=lower_is_better(metric),
                    )
                else:
                    verdict = ""
                rows.append(
                    SummaryRow(
                        problem=problem,
                        algorithm=algo,
                        metric=metric,
                        mean=means[algo],
                        std=stds[algo],
                        n_runs=len(values),
                        best=means[algo] == best_mean,
                        significance=verdict,
                        partial=expected_runs is not None and len(values) < expected_runs,
                    )
                )
    return rows


def wilcoxon_rank_sum(
    sample_a,
    sample_b,
    significance: float = 0.05,
    lower_is_better: bool = True,
) -> tuple[float, str]:
    """Two-sided rank-sum test; verdict describes sample_a relative to sample_b.

    Uses the exact null distribution when both samples are small and tie-free,
    otherwise the normal approximation with tie correction (no continuity
    correction). Returns (p_value, one of "worse"/"better"/"not-significant").
    """
    a = np.asarray(sample_a, dtype=float).ravel()
    b = np.asarray(sample_b, dtype=float).ravel()
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    n1, n2 = a.size, b.size
    pooled = np.concatenate([a, b])
    ranks = rankdata(pooled)
    u_a = float(np.sum(ranks[:n1])) - n1 * (n1 + 1) / 2.0
    _, tie_counts = np.unique(pooled, return_counts=True)
    has_ties = bool(np.any(tie_counts > 1))

    if not has_ties and min(n1, n2) <= EXACT_MAX_N:
        u_min = int(round(min(u_a, n1 * n2 - u_a)))
        p = _exact_two_sided_p(u_min, n1, n2)
    else:
        n = n1 + n2
        tie_term = float(np.sum(tie_counts**3 - tie_counts))
        sigma_sq = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
        if sigma_sq <= 0.0:
            p = 1.0
        else:
            z = (u_a - n1 * n2 / 2.0) / sqrt(sigma_sq)
            p = erfc(abs(z) / sqrt(2.0))

    if p >= significance:
        return p, "not-significant"
    mean_a = float(np.mean(a))
    mean_b = float(np.mean(b))
    a_is_worse = mean_a > mean_b if lower_is_better else mean_a < mean_b
    return p, "worse" if a_is_worse else "better"


def _exact_two_sided_p(u_min: int, n1: int, n2: int) -> float:
    """P(U <= u_min) doubled, from the exact tie-free null distribution."""
    n = n1 + n2
    offset = n1 * (n1 - 1) // 2
    smax = sum(range(n - n1, n))
    ways = np.zeros((n1 + 1, smax + 1))
    ways[0, 0] = 1.0
    for pos in range(n):
        upper = min(n1, pos + 1)
        for k in range(upper, 0, -1):
            if pos == 0:
                ways[k] += ways[k - 1]
            else:
                ways[k, pos:] += ways[k - 1, : smax + 1 - pos]
    tail = float(np.sum(ways[n1, : offset + u_min + 1]))
    return min(1.0, 2.0 * tail / comb(n, n1))
