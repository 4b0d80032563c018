"""Tests for the experiment harness, rank-sum test, and command line."""
from __future__ import annotations

import json
import math

import numpy as np
import pytest
from scipy.stats import mannwhitneyu

from cmoead.cli import main
from cmoead.engine import EngineConfig
from cmoead.harness import (
    ExperimentConfig,
    _render_summary_csv,
    budget_for,
    load_metrics,
    lower_is_better,
    resolve_output_dir,
    run_experiment,
    summarize,
    wilcoxon_rank_sum,
)


def tiny_experiment(out_dir, **overrides) -> ExperimentConfig:
    base = dict(
        problems=("lircmop1", "lircmop5"),
        algorithms=("iepsilon", "cdp"),
        runs=2,
        engine=EngineConfig(N=20, T=5, t_max=3, seed=7),
        output_dir=out_dir,
        metrics=("igd", "hv"),
        front_size=50,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_wilcoxon_exact_small_case():
    p, verdict = wilcoxon_rank_sum([1.0, 2.0, 3.0], [10.0, 11.0, 12.0])
    assert p == 0.1
    assert verdict == "not-significant"
    p, verdict = wilcoxon_rank_sum([1.0, 2.0, 3.0], [10.0, 11.0, 12.0], significance=0.2)
    assert p == 0.1
    assert verdict == "better"
    p, verdict = wilcoxon_rank_sum([10.0, 11.0, 12.0], [1.0, 2.0, 3.0], significance=0.2)
    assert verdict == "worse"


def test_wilcoxon_orientation_flips_for_higher_is_better():
    _, verdict = wilcoxon_rank_sum(
        [10.0, 11.0, 12.0], [1.0, 2.0, 3.0], significance=0.2, lower_is_better=False
    )
    assert verdict == "better"


def test_wilcoxon_identical_samples_not_significant():
    p, verdict = wilcoxon_rank_sum([1.0, 1.0, 1.0], [1.0, 1.0, 1.0])
    assert p == 1.0
    assert verdict == "not-significant"


def test_wilcoxon_separated_large_samples():
    a = np.arange(30.0)
    b = np.arange(100.0, 130.0)
    p, verdict = wilcoxon_rank_sum(a, b)
    assert p < 1e-9
    assert verdict == "better"


def test_wilcoxon_exact_matches_reference_implementation():
    rng = np.random.default_rng(21)
    for _ in range(50):
        n1 = int(rng.integers(3, 9))
        n2 = int(rng.integers(3, 9))
        a = rng.random(n1)
        b = rng.random(n2)
        ours, _ = wilcoxon_rank_sum(a, b, significance=1e-12)
        ref = mannwhitneyu(a, b, alternative="two-sided", method="exact").pvalue
        assert math.isclose(ours, float(ref), rel_tol=1e-12)


def test_wilcoxon_normal_branch_matches_reference_implementation():
    rng = np.random.default_rng(22)
    for _ in range(30):
        a = rng.integers(0, 8, size=20).astype(float)
        b = rng.integers(2, 10, size=25).astype(float)
        ours, _ = wilcoxon_rank_sum(a, b, significance=1e-300)
        ref = mannwhitneyu(
            a, b, alternative="two-sided", method="asymptotic", use_continuity=False
        ).pvalue
        assert math.isclose(ours, float(ref), rel_tol=1e-10)


def test_wilcoxon_rejects_empty_samples():
    with pytest.raises(ValueError):
        wilcoxon_rank_sum([], [1.0])


def test_lower_is_better_orientation():
    assert lower_is_better("igd")
    assert not lower_is_better("hv")


def test_budget_defaults():
    assert budget_for("lircmop1", None) == 300000
    assert budget_for("gripper", None) == 600000
    assert budget_for("gripper", 1234) == 1234


def test_resolve_output_dir(tmp_path, monkeypatch):
    assert resolve_output_dir(tmp_path) == tmp_path
    monkeypatch.setenv("CMOEAD_OUT_DIR", str(tmp_path / "env"))
    assert resolve_output_dir(None) == tmp_path / "env"
    monkeypatch.delenv("CMOEAD_OUT_DIR")
    with pytest.raises(ValueError):
        resolve_output_dir(None)


def test_summarize_table():
    per_run = {
        ("p", "a", "igd"): [1.0, 2.0, 3.0],
        ("p", "b", "igd"): [10.0, 11.0, 12.0],
    }
    rows = summarize(per_run, reference="a", expected_runs=3)
    by_algo = {row.algorithm: row for row in rows}
    assert by_algo["a"].mean == 2.0
    assert by_algo["a"].std == 1.0
    assert by_algo["a"].best
    assert by_algo["a"].significance == "reference"
    assert not by_algo["a"].partial
    assert by_algo["b"].mean == 11.0
    assert not by_algo["b"].best
    assert by_algo["b"].significance == "not-significant"
    rows = summarize(per_run, reference="a", expected_runs=5)
    assert all(row.partial for row in rows)


def test_summarize_best_uses_metric_orientation():
    per_run = {
        ("p", "a", "hv"): [0.5, 0.5],
        ("p", "b", "hv"): [0.9, 0.9],
    }
    rows = summarize(per_run, reference="a")
    by_algo = {row.algorithm: row for row in rows}
    assert by_algo["b"].best and not by_algo["a"].best


def test_run_experiment_files_and_manifest(tmp_path):
    cfg = tiny_experiment(tmp_path / "exp")
    rows, manifest = run_experiment(cfg)
    out = tmp_path / "exp"
    assert manifest["failures"] == 0
    assert len(manifest["cells"]) == 8
    assert manifest["budgets"] == {"lircmop1": 300000, "lircmop5": 300000}
    assert (out / "summary.csv").is_file()
    assert (out / "manifest.json").is_file()
    assert json.loads((out / "manifest.json").read_text()) == manifest
    for problem in cfg.problems:
        assert (out / "fronts" / f"{problem}.txt").is_file()
        for algo in cfg.algorithms:
            for i in range(cfg.runs):
                run_csv = out / "runs" / problem / algo / f"run_{i}.csv"
                metrics_txt = out / "runs" / problem / algo / f"run_{i}_metrics.txt"
                assert run_csv.is_file() and metrics_txt.is_file()
                header = run_csv.read_text().splitlines()[0].split(",")
                assert header == (
                    [f"x_{j + 1}" for j in range(30)] + ["f_1", "f_2", "phi"]
                )
                names = [line.split()[0] for line in metrics_txt.read_text().splitlines()]
                assert names == ["igd", "hv", "evaluations"]
    # Summary rows rebuilt from the persisted records are exactly the ones
    # returned, because the on-disk floats round-trip. Rendered text compares
    # equal even where a cell is nan (empty archives give igd = inf, std = nan).
    rebuilt = summarize(
        load_metrics(out),
        reference=manifest["reference_algorithm"],
        significance=manifest["significance"],
        expected_runs=manifest["runs"],
        problem_order=tuple(manifest["problems"]),
        algorithm_order=tuple(manifest["algorithms"]),
        metric_order=tuple(manifest["metrics"]),
    )
    assert _render_summary_csv(rebuilt) == _render_summary_csv(rows)
    assert _render_summary_csv(rows) == (out / "summary.csv").read_text()


def test_run_experiment_repeats_byte_identical(tmp_path):
    run_experiment(tiny_experiment(tmp_path / "one"))
    run_experiment(tiny_experiment(tmp_path / "two"))
    one = sorted((tmp_path / "one" / "runs").rglob("*"))
    two = sorted((tmp_path / "two" / "runs").rglob("*"))
    assert [p.name for p in one if p.is_file()] == [p.name for p in two if p.is_file()]
    for a, b in zip(one, two):
        if a.is_file():
            assert a.read_bytes() == b.read_bytes(), a.name
    assert (tmp_path / "one" / "summary.csv").read_bytes() == (
        tmp_path / "two" / "summary.csv"
    ).read_bytes()


def test_run_experiment_rejects_unknown_algorithm(tmp_path):
    with pytest.raises(ValueError):
        run_experiment(tiny_experiment(tmp_path, algorithms=("bogus",)))


def test_run_experiment_records_cell_failures(tmp_path):
    cfg = tiny_experiment(
        tmp_path, problems=("lircmop1",), algorithms=("iepsilon",), metrics=("igd", "bogus")
    )
    rows, manifest = run_experiment(cfg)
    assert manifest["failures"] == 2
    assert all(cell["status"] == "failed" for cell in manifest["cells"])
    assert rows == []


def test_cli_run_and_summarize(tmp_path, capsys):
    out = tmp_path / "cli"
    code = main(
        [
            "run",
            "--problem",
            "lircmop1",
            "--algo",
            "iepsilon",
            "--pop",
            "40",
            "--max-evals",
            "120",
            "--runs",
            "2",
            "--front-size",
            "40",
            "--out",
            str(out),
        ]
    )
    stdout = capsys.readouterr().out
    assert code == 0
    assert stdout.splitlines()[0].startswith("problem,algorithm,metric,mean")
    assert "lircmop1,iepsilon,igd," in stdout
    code = main(["summarize", "--in", str(out)])
    assert code == 0
    assert capsys.readouterr().out == stdout


def test_cli_summarize_empty_dir_fails(tmp_path, capsys):
    assert main(["summarize", "--in", str(tmp_path)]) == 1
    assert "no per-run metric records" in capsys.readouterr().err


def test_cli_run_reports_cell_failures(tmp_path, capsys):
    code = main(
        [
            "run",
            "--problem",
            "lircmop1",
            "--algo",
            "iepsilon",
            "--pop",
            "40",
            "--max-evals",
            "80",
            "--runs",
            "1",
            "--metric",
            "igd,bogus",
            "--front-size",
            "30",
            "--out",
            str(tmp_path / "bad"),
        ]
    )
    captured = capsys.readouterr()
    assert code == 1
    assert "1 cell(s) failed" in captured.err
    manifest = json.loads((tmp_path / "bad" / "manifest.json").read_text())
    assert manifest["failures"] == 1


def test_cli_reffront_and_rfs(tmp_path, capsys):
    front_file = tmp_path / "front.txt"
    assert main(["reffront", "--problem", "lircmop1", "--size", "30", "--out", str(front_file)]) == 0
    assert capsys.readouterr().out == f"wrote 30 points to {front_file}\n"
    assert np.loadtxt(front_file).shape == (30, 2)
    assert main(["rfs", "--problem", "lircmop5", "--samples", "2000"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("lircmop5 feasible_ratio ")
    assert "(2000 samples)" in out


def test_cli_run_uses_env_output_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CMOEAD_OUT_DIR", str(tmp_path / "envout"))
    code = main(
        [
            "run",
            "--problem",
            "lircmop5",
            "--algo",
            "cdp",
            "--pop",
            "40",
            "--max-evals",
            "80",
            "--runs",
            "1",
            "--front-size",
            "30",
        ]
    )
    capsys.readouterr()
    assert code == 0
    assert (tmp_path / "envout" / "manifest.json").is_file()
