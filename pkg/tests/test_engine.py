"""Tests for the decomposition-based optimization engine."""
from __future__ import annotations

import numpy as np
import pytest

from cmoead.constraints import PolicyKind, UpdatePolicy
from cmoead.core import Solution, nondominated_mask
from cmoead.engine import EngineConfig, archive_update, run, select_mating_pool
from cmoead.problems import problem_by_name


def small_config(**overrides) -> EngineConfig:
    base = dict(N=40, T=8, t_max=20, max_evaluations=10**9, seed=3)
    base.update(overrides)
    return EngineConfig(**base)


def sol(x, objectives, feasible=True) -> Solution:
    phi = 0.0 if feasible else 1.0
    return Solution(
        np.asarray(x, dtype=float),
        np.asarray(objectives, dtype=float),
        np.array([-phi]),
        np.empty(0),
        phi,
    )


def archive_keys(solutions) -> set:
    return {s.x.tobytes() for s in solutions}


def test_run_deterministic():
    prob = problem_by_name("lircmop5")
    a = run(prob, small_config())
    b = run(prob, small_config())
    assert a.evaluations_used == b.evaluations_used
    assert archive_keys(a.archive) == archive_keys(b.archive)
    assert all(
        np.array_equal(x.x, y.x) for x, y in zip(a.final_population, b.final_population)
    )
    assert a.trace == b.trace


def test_seed_changes_trajectory():
    prob = problem_by_name("lircmop5")
    a = run(prob, small_config(seed=3))
    b = run(prob, small_config(seed=4))
    assert any(
        not np.array_equal(x.x, y.x)
        for x, y in zip(a.final_population, b.final_population)
    )


def test_exact_evaluation_accounting():
    prob = problem_by_name("lircmop1")
    result = run(prob, small_config(t_max=10))
    assert result.evaluations_used == 40 + 10 * 40
    assert len(result.trace) == 10
    assert [rec.k for rec in result.trace] == list(range(1, 11))


def test_budget_starts_only_whole_generations():
    prob = problem_by_name("lircmop1")
    cfg = small_config(t_max=None, max_evaluations=1000)
    result = run(prob, cfg)
    assert result.evaluations_used == 1000
    assert len(result.trace) == 24
    # A budget of 1079 fits 25 whole generations after the initial 40; the
    # remaining 39 evaluations never start a 26th.
    result = run(prob, small_config(t_max=None, max_evaluations=1079))
    assert result.evaluations_used == 1040
    assert len(result.trace) == 25


def test_zero_generations_returns_initial_state():
    prob = problem_by_name("lircmop5")
    result = run(prob, small_config(t_max=0))
    assert result.evaluations_used == 40
    assert result.trace == []
    assert len(result.final_population) == 40
    assert all(s.feasible for s in result.archive)
    objs = np.array([s.objectives for s in result.archive])
    assert nondominated_mask(objs).all()


def test_archive_is_feasible_nondominated_and_absorbing():
    prob = problem_by_name("lircmop5")
    result = run(prob, small_config())
    assert len(result.archive) > 0
    assert all(s.feasible for s in result.archive)
    objs = np.array([s.objectives for s in result.archive])
    assert nondominated_mask(objs).all()
    # The archive already absorbed the final population, so offering it again
    # is a fixed point.
    merged = archive_update(result.archive, result.final_population)
    assert archive_keys(merged) == archive_keys(result.archive)


def test_archive_cap_limits_size():
    prob = problem_by_name("lircmop5")
    result = run(prob, small_config(archive_cap=15))
    assert 0 < len(result.archive) <= 15


def test_archive_update_rules():
    feas_a = sol([0.0], [1.0, 2.0])
    feas_b = sol([1.0], [2.0, 1.0])
    dominated = sol([2.0], [3.0, 3.0])
    infeasible = sol([3.0], [0.0, 0.0], feasible=False)
    duplicate = sol([0.0], [1.0, 2.0])
    out = archive_update([], [feas_a, feas_b, dominated, infeasible, duplicate])
    assert archive_keys(out) == {feas_a.x.tobytes(), feas_b.x.tobytes()}
    # A better newcomer displaces a dominated incumbent.
    better = sol([4.0], [0.5, 0.5])
    out = archive_update(out, [better])
    assert archive_keys(out) == {better.x.tobytes()}


@pytest.mark.parametrize(
    "policy",
    [
        UpdatePolicy(PolicyKind.EPSILON),
        UpdatePolicy(PolicyKind.CDP),
        UpdatePolicy(PolicyKind.SR, sr_pf=0.05),
        UpdatePolicy(PolicyKind.CMOEAD),
    ],
)
def test_all_policies_complete(policy):
    prob = problem_by_name("lircmop1")
    result = run(prob, small_config(t_max=5, policy=policy))
    assert result.evaluations_used == 40 + 5 * 40
    assert len(result.trace) == 5


def test_pbi_scalarization_completes():
    from cmoead.decomposition import Scalarization

    prob = problem_by_name("lircmop5")
    result = run(prob, small_config(t_max=5, scalarization=Scalarization.PBI))
    assert len(result.trace) == 5


def test_trace_replays_epsilon_schedule():
    prob = problem_by_name("lircmop1")
    cfg = small_config(N=60, T=10, t_max=120, tc=100, seed=1)
    result = run(prob, cfg)
    trace = result.trace
    assert len(trace) == 120
    phi = [rec.phi_max for rec in trace]
    assert all(b >= a for a, b in zip(phi, phi[1:]))
    assert all(0.0 <= rec.feasible_ratio <= 1.0 for rec in trace)
    for prev, rec in zip(trace, trace[1:]):
        if rec.k >= cfg.tc:
            assert rec.epsilon == 0.0
        elif rec.feasible_ratio < cfg.alpha:
            assert rec.epsilon == (1.0 - cfg.tau) * prev.epsilon
        else:
            assert rec.epsilon == (1.0 + cfg.tau) * rec.phi_max


def test_trace_epsilon_inactive_for_cdp():
    prob = problem_by_name("lircmop1")
    result = run(prob, small_config(t_max=5, policy=UpdatePolicy(PolicyKind.CDP)))
    assert all(rec.epsilon == 0.0 for rec in result.trace)


def test_mating_pool_consumes_one_draw():
    nbhd = np.arange(100).reshape(10, 10)
    rng_a = np.random.default_rng(0)
    rng_b = np.random.default_rng(0)
    for j in range(5):
        select_mating_pool(j, nbhd, 0.5, 10, rng_a)
        rng_b.random()
    assert rng_a.random() == rng_b.random()


def test_mating_pool_probability():
    nbhd = np.arange(40).reshape(8, 5)
    rng = np.random.default_rng(12)
    picks = sum(
        select_mating_pool(2, nbhd, 0.9, 8, rng).size == 5 for _ in range(20000)
    )
    assert abs(picks / 20000 - 0.9) < 0.01
    assert select_mating_pool(2, nbhd, 1.0, 8, rng).size == 5
    assert select_mating_pool(2, nbhd, 0.0, 8, rng).size == 8


@pytest.mark.parametrize(
    "overrides",
    [
        {"N": 1},
        {"T": 1},
        {"T": 41},
        {"nr": 0},
        {"delta": 1.5},
        {"tau": 0.0},
        {"tau": 1.0},
        {"alpha": 1.5},
        {"tc": 0},
        {"theta_index": 0},
        {"theta_index": 41},
        {"t_max": -1},
        {"max_evaluations": -1},
        {"policy": UpdatePolicy(PolicyKind.SR, sr_pf=1.5)},
        {"archive_cap": 0},
    ],
)
def test_config_validation_rejects(overrides):
    prob = problem_by_name("lircmop1")
    with pytest.raises(ValueError):
        run(prob, small_config(**{"t_max": 1, **overrides}))
