"""Decomposition-based generational loop with pluggable constraint handling."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Sequence

import numpy as np

from .constraints import (
    IEpsilonState,
    LegacyEpsilonState,
    PolicyKind,
    UpdatePolicy,
    cmoead_epsilon,
    initial_epsilon,
    iepsilon_update,
    legacy_epsilon_update,
    update_subproblem_many,
)
from .core import Problem, Solution, make_solution, nondominated_filter
from .decomposition import Scalarization, generate_weight_vectors, neighborhoods, scalarize
from .variation import VariationConfig, de_crossover, polynomial_mutation


@dataclass
class GenerationRecord:
    """Scheduler snapshot taken at the start of one generation."""

    k: int
    epsilon: float
    feasible_ratio: float
    phi_max: float


@dataclass
class RunResult:
    """Feasible nondominated archive, final population, and per-generation trace."""

    archive: list[Solution]
    final_population: list[Solution]
    evaluations_used: int
    trace: list[GenerationRecord]


@dataclass
class EngineConfig:
    """Run parameters; t_max=None derives max_evaluations // N generations and
    theta_index=None derives ceil(0.05 N). The evaluation budget counts the
    initial population, and a generation only starts if it fits in full."""

    N: int = 300
    T: int = 30
    delta: float = 0.9
    nr: int = 2
    t_max: int | None = None
    max_evaluations: int = 300000
    policy: UpdatePolicy = field(default_factory=UpdatePolicy)
    variation: VariationConfig = field(default_factory=VariationConfig)
    tau: float = 0.1
    alpha: float = 0.95
    tc: int = 800
    theta_index: int | None = None
    cp: float = 2.0
    seed: int = 0
    scalarization: Scalarization = Scalarization.TCHEBYCHEFF
    pbi_theta: float = 5.0
    archive_cap: int | None = None

    def validate(self, problem: Problem) -> None:
        if self.N < max(2, problem.m):
            raise ValueError("population size too small for the objective count")
        if not 2 <= self.T <= self.N:
            raise ValueError("neighborhood size must lie in [2, N]")
        if self.nr < 1:
            raise ValueError("nr must be at least 1")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError("delta must lie in [0, 1]")
        if not 0.0 < self.tau < 1.0:
            raise ValueError("tau must lie in (0, 1)")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.tc < 1:
            raise ValueError("tc must be at least 1")
        if self.theta_index is not None and not 1 <= self.theta_index <= self.N:
            raise ValueError("theta_index must lie in [1, N]")
        if self.t_max is not None and self.t_max < 0:
            raise ValueError("t_max must be nonnegative")
        if self.max_evaluations < 0:
            raise ValueError("max_evaluations must be nonnegative")
        if not 0.0 <= self.policy.sr_pf <= 1.0:
            raise ValueError("sr_pf must lie in [0, 1]")
        if self.archive_cap is not None and self.archive_cap < 1:
            raise ValueError("archive_cap must be positive")


def select_mating_pool(
    j: int,
    neighborhoods: np.ndarray,
    delta: float,
    N: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """B(j) with probability delta, otherwise the full index set.

    Always consumes exactly one uniform draw.
    """
    if rng.random() < delta:
        return np.asarray(neighborhoods[j])
    return np.arange(N)


def archive_update(
    archive: Sequence[Solution], population: Sequence[Solution]
) -> list[Solution]:
    """Union of the archive and the feasible population members, reduced to the
    nondominated subset; duplicate decision vectors are kept once."""
    merged: dict[bytes, Solution] = {}
    for s in list(archive) + [p for p in population if p.feasible]:
        merged.setdefault(s.x.tobytes(), s)
    return nondominated_filter(list(merged.values()))


class _Archive:
    """Incremental feasible nondominated store with byte-level deduplication.

    A decision vector rejected once (duplicate or dominated) is never
    re-admitted; this is sound because the stored set only improves. When a
    capacity cap prunes entries, the pruned vectors also stay rejected.
    """

    def __init__(self, m: int):
        self._buf = np.empty((256, m))
        self._count = 0
        self._solutions: list[Solution] = []
        self._seen: set[bytes] = set()

    @property
    def objectives(self) -> np.ndarray:
        return self._buf[: self._count]

    def solutions(self) -> list[Solution]:
        return list(self._solutions)

    def offer(self, s: Solution) -> bool:
        key = s.x.tobytes()
        if key in self._seen:
            return False
        self._seen.add(key)
        f = s.objectives
        objs = self.objectives
        if self._count:
            le = np.all(objs <= f, axis=1)
            lt = np.any(objs < f, axis=1)
            if np.any(le & lt):
                return False
            drop = np.all(objs >= f, axis=1) & np.any(objs > f, axis=1)
            if np.any(drop):
                keep = ~drop
                kept = objs[keep]
                self._count = kept.shape[0]
                self._buf[: self._count] = kept
                self._solutions = [sol for sol, k in zip(self._solutions, keep) if k]
        if self._count == self._buf.shape[0]:
            grown = np.empty((2 * self._buf.shape[0], self._buf.shape[1]))
            grown[: self._count] = self.objectives
            self._buf = grown
        self._buf[self._count] = f
        self._count += 1
        self._solutions.append(s)
        return True

    def prune(self, cap: int) -> None:
        """Thin to `cap` members evenly spaced along the objective-sorted order."""
        if self._count <= cap:
            return
        objs = self.objectives
        order = np.lexsort(objs.T[::-1])
        pick = np.round(np.linspace(0, self._count - 1, cap)).astype(int)
        sel = order[pick]
        kept = objs[sel]
        self._buf[:cap] = kept
        self._solutions = [self._solutions[i] for i in sel]
        self._count = cap


def run(problem: Problem, cfg: EngineConfig) -> RunResult:
    """Execute one seeded optimization run.

    Per-subproblem RNG consumption order: pool choice (1 uniform), two parent
    index draws, crossover (n uniforms + 1 integer), mutation (2n uniforms),
    one permutation of the pool for replacement order, and for the SR policy
    one uniform per pool member.
    """
    cfg.validate(problem)
    rng = np.random.default_rng(cfg.seed)
    n, m, N = problem.n, problem.m, cfg.N
    lower, upper = problem.lower, problem.upper
    span = upper - lower

    weights = generate_weight_vectors(N, m, rng)
    nbhd = neighborhoods(weights, cfg.T)
    theta_idx = cfg.theta_index if cfg.theta_index is not None else ceil(0.05 * N)
    t_max = cfg.t_max if cfg.t_max is not None else cfg.max_evaluations // N

    X = lower + rng.random((N, n)) * span
    population = [make_solution(problem, X[i]) for i in range(N)]
    evaluations = N
    objs = np.array([s.objectives for s in population])
    phis = np.array([s.violation for s in population])
    feas = np.array([s.feasible for s in population])

    ideal = np.full(m, np.inf)
    finite_rows = np.all(np.isfinite(objs), axis=1)
    if np.any(finite_rows):
        ideal = objs[finite_rows].min(axis=0)

    finite_phis = phis[np.isfinite(phis)]
    phi_max = float(finite_phis.max()) if finite_phis.size else 0.0
    eps0 = initial_epsilon(phis, theta_idx)
    ie_state = IEpsilonState(
        epsilon=eps0,
        phi_max=phi_max,
        tau=cfg.tau,
        alpha=cfg.alpha,
        tc=cfg.tc,
        theta_index=theta_idx,
    )
    legacy_state = LegacyEpsilonState(
        epsilon0=eps0, cp=cfg.cp, tc=cfg.tc, theta_index=theta_idx
    )

    archive = _Archive(m)
    for s in population:
        if s.feasible:
            archive.offer(s)

    trace: list[GenerationRecord] = []
    kind = cfg.policy.kind
    method = cfg.scalarization
    theta = cfg.pbi_theta

    # Schedule-driving feasible ratio. Fully feasible starts (eps0 == 0) can
    # only reach separated feasible regions through relaxation pumps, and a
    # strict count would end every pump one generation after ignition; such
    # runs count members within the current relaxation. Infeasible starts
    # keep the strict count so the decaying schedule tracks the population.
    count_within_eps = kind is PolicyKind.IEPSILON and eps0 == 0.0

    for k in range(1, t_max + 1):
        if evaluations + N > cfg.max_evaluations:
            break
        if count_within_eps:
            r_k = float(np.count_nonzero(phis <= ie_state.epsilon)) / N
        else:
            r_k = float(np.count_nonzero(feas)) / N
        if kind is PolicyKind.IEPSILON:
            ie_state.phi_max = phi_max
            eps_k = iepsilon_update(ie_state, k, r_k)
        elif kind is PolicyKind.EPSILON:
            eps_k = legacy_epsilon_update(legacy_state, k)
        elif kind is PolicyKind.CMOEAD:
            finite = phis[np.isfinite(phis)]
            cv_mean = float(finite.mean()) if finite.size else 0.0
            eps_k = cmoead_epsilon(cv_mean, r_k)
        else:
            eps_k = 0.0
        trace.append(GenerationRecord(k, eps_k, r_k, phi_max))

        for j in rng.permutation(N):
            pool = select_mating_pool(j, nbhd, cfg.delta, N, rng)
            i1 = int(rng.integers(pool.size))
            i2 = int(rng.integers(pool.size - 1))
            if i2 >= i1:
                i2 += 1
            y = de_crossover(
                population[j].x,
                population[pool[i1]].x,
                population[pool[i2]].x,
                cfg.variation,
                lower,
                upper,
                rng,
            )
            y = polynomial_mutation(y, cfg.variation, lower, upper, rng)
            child = make_solution(problem, y)
            evaluations += 1

            cv = child.violation
            if np.isfinite(cv) and cv > phi_max:
                phi_max = cv
            cf = child.objectives
            if np.all(np.isfinite(cf)):
                np.minimum(ideal, cf, out=ideal)

            # Visit candidates in random order; win flags are evaluated against
            # the pre-loop state, which matches a sequential sweep because each
            # index is visited at most once.
            order = rng.permutation(pool)
            agg_current = scalarize(objs[order], weights[order], ideal, method, theta)
            agg_child = scalarize(cf, weights[order], ideal, method, theta)
            wins = update_subproblem_many(
                phis[order], agg_current, cv, agg_child, eps_k, cfg.policy, rng
            )
            winners = order[wins]
            if winners.size > cfg.nr:
                winners = winners[: cfg.nr]
            for idx in winners:
                population[idx] = child
                objs[idx] = cf
                phis[idx] = cv
                feas[idx] = child.feasible

        for s in population:
            if s.feasible:
                archive.offer(s)
        if cfg.archive_cap is not None:
            archive.prune(cfg.archive_cap)

    return RunResult(archive.solutions(), list(population), evaluations, trace)
