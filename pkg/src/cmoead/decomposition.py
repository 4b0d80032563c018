"""Weight vectors, neighborhoods, ideal point, and scalarization functions."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Solution

TCH_ZERO_WEIGHT = 1e-6


class Scalarization(Enum):
    WEIGHTED_SUM = "ws"
    TCHEBYCHEFF = "tch"
    PBI = "pbi"


@dataclass
class SubproblemSet:
    """Weight vectors, neighborhoods, ideal point, and current solutions of one run."""

    weights: np.ndarray
    neighborhoods: np.ndarray
    ideal: np.ndarray
    solutions: list[Solution]
    scalarization: Scalarization = Scalarization.TCHEBYCHEFF
    pbi_theta: float = 5.0


def _simplex_lattice(h: int, m: int) -> np.ndarray:
    """All m-part compositions of h, scaled to the unit simplex."""
    if m == 1:
        return np.array([[float(h)]]) / max(h, 1)
    rows = []

    def build(prefix: list[int], remaining: int, parts_left: int) -> None:
        if parts_left == 1:
            rows.append(prefix + [remaining])
            return
        for v in range(remaining + 1):
            build(prefix + [v], remaining - v, parts_left - 1)

    build([], h, m)
    return np.asarray(rows, dtype=float) / float(h)


def lattice_size(h: int, m: int) -> int:
    """Number of points in the m-objective simplex lattice with resolution h."""
    from math import comb

    return comb(h + m - 1, m - 1)


def generate_weight_vectors(N: int, m: int, rng: np.random.Generator | None = None) -> np.ndarray:
    """N weight vectors on the unit simplex; lattice-based, padded with random samples."""
    if N < m:
        raise ValueError("need at least m weight vectors")
    if m == 2:
        t = np.arange(N, dtype=float) / (N - 1)
        return np.column_stack([t, 1.0 - t])
    h = 1
    while lattice_size(h + 1, m) <= N:
        h += 1
    weights = _simplex_lattice(h, m)
    if weights.shape[0] < N:
        if rng is None:
            rng = np.random.default_rng(0)
        # uniform simplex samples via sorted-uniform spacings
        extra = N - weights.shape[0]
        cuts = np.sort(rng.random((extra, m - 1)), axis=1)
        pads = np.diff(np.concatenate([np.zeros((extra, 1)), cuts, np.ones((extra, 1))], axis=1), axis=1)
        weights = np.vstack([weights, pads])
    return weights[:N]


def neighborhoods(weights: np.ndarray, T: int) -> np.ndarray:
    """Indices of the T nearest weight vectors per row, self included, ties to lower index."""
    W = np.asarray(weights, dtype=float)
    N = W.shape[0]
    if T > N:
        raise ValueError("neighborhood size cannot exceed the number of weights")
    out = np.empty((N, T), dtype=int)
    for i in range(N):
        d = np.linalg.norm(W - W[i], axis=1)
        d[i] = -1.0  # guarantee self-membership even under exact duplicates
        out[i] = np.argsort(d, kind="stable")[:T]
    return out


def scalarize(
    F: np.ndarray,
    lam: np.ndarray,
    ideal: np.ndarray,
    method: Scalarization = Scalarization.TCHEBYCHEFF,
    theta: float = 5.0,
) -> float | np.ndarray:
    """Aggregate objectives under one weight vector; accepts (m,) or batched (k, m) inputs."""
    F = np.asarray(F, dtype=float)
    lam = np.asarray(lam, dtype=float)
    scalar_out = F.ndim == 1 and lam.ndim == 1
    Fb = np.atleast_2d(F)
    Lb = np.atleast_2d(lam)
    if method is Scalarization.WEIGHTED_SUM:
        vals = np.sum(Lb * Fb, axis=1)
    elif method is Scalarization.TCHEBYCHEFF:
        z = np.asarray(ideal, dtype=float)
        lam_eff = np.where(Lb == 0.0, TCH_ZERO_WEIGHT, Lb)
        vals = np.max(lam_eff * np.abs(Fb - z), axis=1)
    elif method is Scalarization.PBI:
        z = np.asarray(ideal, dtype=float)
        diff = Fb - z
        norms = np.linalg.norm(Lb, axis=1)
        d1 = np.abs(np.sum(diff * Lb, axis=1)) / norms
        proj = (d1 / norms)[:, None] * Lb
        d2 = np.linalg.norm(diff - proj, axis=1)
        vals = d1 + theta * d2
    else:
        raise ValueError(f"unknown scalarization method: {method!r}")
    return float(vals[0]) if scalar_out else vals


def update_ideal(ideal: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Componentwise minimum of the ideal point and an objective vector."""
    z = np.asarray(ideal, dtype=float)
    f = np.asarray(F, dtype=float)
    if z.shape != f.shape:
        raise ValueError("ideal point and objective vector must have equal length")
    return np.minimum(z, f)
