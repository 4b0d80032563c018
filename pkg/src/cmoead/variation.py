"""Differential-evolution crossover and bounded polynomial mutation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class VariationConfig:
    """Operator parameters; pm=None selects the 1/n default at call time."""

    de_f: float = 0.5
    de_cr: float = 1.0
    pm: float | None = None
    eta_m: float = 20.0


def de_crossover(
    base: np.ndarray,
    r1: np.ndarray,
    r2: np.ndarray,
    cfg: VariationConfig,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Rand-difference crossover on the base vector, one dimension forced, clipped to bounds.

    Consumes rng.random(n) then rng.integers(n), in that order.
    """
    n = base.size
    mask = rng.random(n) < cfg.de_cr
    mask[rng.integers(n)] = True
    y = np.where(mask, base + cfg.de_f * (r1 - r2), base)
    return np.clip(y, lower, upper)


def polynomial_mutation(
    x: np.ndarray,
    cfg: VariationConfig,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Bounded polynomial mutation, each dimension perturbed with probability pm.

    Consumes rng.random(n) twice (mutation mask, then perturbation draws).
    """
    n = x.size
    pm = cfg.pm if cfg.pm is not None else 1.0 / n
    do_mut = rng.random(n) < pm
    u = rng.random(n)
    span = upper - lower
    delta1 = (x - lower) / span
    delta2 = (upper - x) / span
    exp = 1.0 / (cfg.eta_m + 1.0)
    low_branch = np.power(
        2.0 * u + (1.0 - 2.0 * u) * np.power(1.0 - delta1, cfg.eta_m + 1.0), exp
    ) - 1.0
    high_branch = 1.0 - np.power(
        2.0 * (1.0 - u) + 2.0 * (u - 0.5) * np.power(1.0 - delta2, cfg.eta_m + 1.0), exp
    )
    deltaq = np.where(u <= 0.5, low_branch, high_branch)
    y = np.where(do_mut, x + deltaq * span, x)
    return np.clip(y, lower, upper)
