"""Epsilon-level comparison, epsilon schedules, and subproblem update policies."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Solution, dominates


class PolicyKind(Enum):
    IEPSILON = "iepsilon"
    EPSILON = "epsilon"
    CDP = "cdp"
    SR = "sr"
    CMOEAD = "cmoead"


@dataclass
class UpdatePolicy:
    """Which subproblem-update rule set a run uses; sr_pf only applies to SR."""

    kind: PolicyKind = PolicyKind.IEPSILON
    sr_pf: float = 0.05


@dataclass
class IEpsilonState:
    """Adaptive epsilon-schedule state driven by the population feasible ratio."""

    epsilon: float
    phi_max: float
    tau: float = 0.1
    alpha: float = 0.95
    tc: int = 800
    theta_index: int = 15


@dataclass
class LegacyEpsilonState:
    """Monotone-decay epsilon-schedule state."""

    epsilon0: float
    cp: float = 2.0
    tc: int = 800
    theta_index: int = 15


class Preference(Enum):
    FIRST = 1
    SECOND = 2
    INCOMPARABLE = 0


def initial_epsilon(violations: np.ndarray, theta_index: int) -> float:
    """The theta_index-th largest violation (1-based); non-finite entries are ignored."""
    v = np.asarray(violations, dtype=float)
    if v.size == 0:
        raise ValueError("population violations must be nonempty")
    if not 1 <= theta_index <= v.size:
        raise ValueError("theta_index must lie in [1, population size]")
    finite = v[np.isfinite(v)]
    if finite.size == 0:
        return 0.0
    order = np.sort(finite)[::-1]
    return float(order[min(theta_index, finite.size) - 1])


def iepsilon_update(state: IEpsilonState, k: int, r_k: float) -> float:
    """Advance the adaptive schedule to generation k given feasible ratio r_k."""
    if k >= state.tc:
        eps = 0.0
    elif r_k < state.alpha:
        eps = (1.0 - state.tau) * state.epsilon
    else:
        eps = (1.0 + state.tau) * state.phi_max
    state.epsilon = eps
    return eps


def legacy_epsilon_update(state: LegacyEpsilonState, k: int) -> float:
    """Epsilon at generation k under the monotone power-decay schedule."""
    if k >= state.tc:
        return 0.0
    if k == 0:
        return state.epsilon0
    return state.epsilon0 * (1.0 - k / state.tc) ** state.cp


def cmoead_epsilon(cv_mean: float, feasible_ratio: float) -> float:
    """Population-adaptive epsilon: mean violation scaled by the feasible ratio."""
    return cv_mean * feasible_ratio


def epsilon_compare(s1: Solution, s2: Solution, eps: float) -> Preference:
    """Order two solutions at relaxation level eps."""
    phi1, phi2 = s1.violation, s2.violation
    if (phi1 <= eps and phi2 <= eps) or phi1 == phi2:
        if dominates(s1.objectives, s2.objectives):
            return Preference.FIRST
        if dominates(s2.objectives, s1.objectives):
            return Preference.SECOND
        return Preference.INCOMPARABLE
    return Preference.FIRST if phi1 < phi2 else Preference.SECOND


def _replace_rule(phi_x: float, phi_y: float, agg_x: float, agg_y: float, eps: float) -> bool:
    if phi_y <= eps and phi_x <= eps:
        return bool(agg_y <= agg_x)
    if phi_y == phi_x:
        return bool(agg_y <= agg_x)
    return bool(phi_y < phi_x)


def update_subproblem(
    current: Solution,
    child: Solution,
    eps: float,
    agg_current: float,
    agg_child: float,
    policy: UpdatePolicy,
    rng: np.random.Generator,
) -> bool:
    """True iff the child replaces the current solution under the given policy."""
    kind = policy.kind
    if kind in (PolicyKind.IEPSILON, PolicyKind.EPSILON, PolicyKind.CMOEAD):
        return _replace_rule(current.violation, child.violation, agg_current, agg_child, eps)
    if kind is PolicyKind.CDP:
        return _replace_rule(current.violation, child.violation, agg_current, agg_child, 0.0)
    if kind is PolicyKind.SR:
        if rng.random() < policy.sr_pf:
            return bool(agg_child <= agg_current)
        return _replace_rule(current.violation, child.violation, agg_current, agg_child, 0.0)
    raise ValueError(f"unknown update policy: {kind!r}")


def update_subproblem_many(
    phi_current: np.ndarray,
    agg_current: np.ndarray,
    phi_child: float,
    agg_child: np.ndarray,
    eps: float,
    policy: UpdatePolicy,
    rng: np.random.Generator,
) -> np.ndarray:
    """Vectorized replacement decisions of one child against many current solutions.

    For SR, one uniform draw per candidate is consumed up front (rng.random(k)).
    """
    phi_x = np.asarray(phi_current, dtype=float)
    agg_x = np.asarray(agg_current, dtype=float)
    agg_y = np.asarray(agg_child, dtype=float)
    kind = policy.kind
    if kind is PolicyKind.CDP:
        eps = 0.0
    elif kind is PolicyKind.SR:
        u = rng.random(phi_x.size)
        agg_wins = agg_y <= agg_x
        cdp_wins = _replace_rule_many(phi_x, phi_child, agg_x, agg_y, 0.0)
        return np.where(u < policy.sr_pf, agg_wins, cdp_wins)
    elif kind not in (PolicyKind.IEPSILON, PolicyKind.EPSILON, PolicyKind.CMOEAD):
        raise ValueError(f"unknown update policy: {kind!r}")
    return _replace_rule_many(phi_x, phi_child, agg_x, agg_y, eps)


def _replace_rule_many(
    phi_x: np.ndarray, phi_y: float, agg_x: np.ndarray, agg_y: np.ndarray, eps: float
) -> np.ndarray:
    both_within = (phi_y <= eps) & (phi_x <= eps)
    equal_phi = phi_x == phi_y
    agg_wins = agg_y <= agg_x
    return np.where(both_within | equal_phi, agg_wins, phi_y < phi_x)
