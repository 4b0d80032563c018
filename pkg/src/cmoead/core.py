"""Solution and problem types, constraint-violation aggregation, Pareto dominance."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

EQ_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Solution:
    """One evaluated point: decision vector, objectives, constraint values, violation."""

    x: np.ndarray
    objectives: np.ndarray
    ineq_values: np.ndarray
    eq_values: np.ndarray
    violation: float

    @property
    def feasible(self) -> bool:
        """Feasibility classification; equality residuals within EQ_TOLERANCE count as
        satisfied, and a nonfinite violation (failed evaluation) never does."""
        if not np.isfinite(self.violation):
            return False
        if self.ineq_values.size and not bool(np.all(self.ineq_values >= 0.0)):
            return False
        if self.eq_values.size and not bool(np.all(np.abs(self.eq_values) <= EQ_TOLERANCE)):
            return False
        return True


class Problem:
    """Evaluation interface: bounds, objective count, deterministic evaluate."""

    name: str
    n: int
    m: int
    lower: np.ndarray
    upper: np.ndarray

    def __init__(self, name: str, lower: Iterable[float], upper: Iterable[float], m: int):
        self.name = name
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.m = int(m)
        self.n = int(self.lower.size)
        if self.lower.shape != self.upper.shape or not np.all(self.lower < self.upper):
            raise ValueError("bounds must satisfy lower[i] < upper[i]")

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (objectives, ineq_values, eq_values); ineq feasible when >= 0, eq when = 0."""
        raise NotImplementedError


def overall_violation(ineq_values: np.ndarray, eq_values: np.ndarray) -> float:
    """Sum of clipped inequality violations and absolute equality residuals; NaN propagates."""
    g = np.asarray(ineq_values, dtype=float)
    h = np.asarray(eq_values, dtype=float)
    total = 0.0
    if g.size:
        total += float(np.sum(np.abs(np.minimum(g, 0.0))))
    if h.size:
        total += float(np.sum(np.abs(h)))
    return total


def make_solution(problem: Problem, x: np.ndarray) -> Solution:
    """Evaluate x and classify it; non-finite objectives or constraints give violation +inf."""
    objectives, ineq, eq = problem.evaluate(np.asarray(x, dtype=float))
    objectives = np.asarray(objectives, dtype=float)
    ineq = np.asarray(ineq, dtype=float)
    eq = np.asarray(eq, dtype=float)
    violation = overall_violation(ineq, eq)
    if not np.isfinite(violation) or not np.all(np.isfinite(objectives)):
        violation = float("inf")
    return Solution(np.array(x, dtype=float), objectives, ineq, eq, violation)


def dominates(f1: np.ndarray, f2: np.ndarray) -> bool:
    """True iff f1 is no worse in every objective and strictly better in at least one."""
    a = np.asarray(f1, dtype=float)
    b = np.asarray(f2, dtype=float)
    if a.shape != b.shape:
        raise ValueError("objective vectors must have equal length")
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_mask(objectives: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row; duplicates are all retained."""
    objs = np.asarray(objectives, dtype=float)
    k = objs.shape[0]
    if k == 0:
        return np.zeros(0, dtype=bool)
    if objs.shape[1] == 2:
        return _nondominated_mask_2d(objs)
    mask = np.ones(k, dtype=bool)
    for i in range(k):
        le = np.all(objs <= objs[i], axis=1)
        lt = np.any(objs < objs[i], axis=1)
        if np.any(le & lt):
            mask[i] = False
    return mask


def _nondominated_mask_2d(objs: np.ndarray) -> np.ndarray:
    f1 = objs[:, 0]
    f2 = objs[:, 1]
    order = np.lexsort((f2, f1))
    f1s = f1[order]
    f2s = f2[order]
    new_group = np.empty(order.size, dtype=bool)
    new_group[0] = True
    new_group[1:] = f1s[1:] != f1s[:-1]
    starts = np.flatnonzero(new_group)
    gid = np.cumsum(new_group) - 1
    group_min = np.minimum.reduceat(f2s, starts)
    prior = np.concatenate(([np.inf], np.minimum.accumulate(group_min)[:-1]))
    dominated_sorted = (f2s >= prior[gid]) | (f2s > group_min[gid])
    mask = np.empty(order.size, dtype=bool)
    mask[order] = ~dominated_sorted
    return mask


def nondominated_filter(solutions: Sequence[Solution]) -> list[Solution]:
    """Members of the set not dominated in objective space by any other member."""
    if not solutions:
        return []
    objs = np.array([s.objectives for s in solutions], dtype=float)
    mask = nondominated_mask(objs)
    return [s for s, keep in zip(solutions, mask) if keep]
