"""Benchmark problems, reference fronts, and the feasible-ratio sampler."""
from __future__ import annotations

import numpy as np

from ..core import Problem, make_solution
from .fronts import front_path, load_front, reference_front, save_front
from .gripper import Gripper, gripper_kinematics
from .lircmop import LirCmop, lir_cmop_evaluate

LIRCMOP_NAMES = tuple(f"lircmop{i}" for i in range(1, 15))
PROBLEM_NAMES = LIRCMOP_NAMES + ("gripper",)


def problem_by_name(name: str, z_samples: int = 100) -> Problem:
    """Instantiate a problem from its name; z_samples only affects the gripper."""
    key = name.strip().lower()
    if key.isdigit():
        key = f"lircmop{int(key)}"
    if key == "gripper":
        return Gripper(z_samples=z_samples)
    if key.startswith("lircmop") and key[len("lircmop") :].isdigit():
        return LirCmop(int(key[len("lircmop") :]))
    raise ValueError(f"unknown problem name: {name!r}")


def estimate_feasible_ratio(
    problem: Problem, samples: int, rng: np.random.Generator | None = None
) -> float:
    """Fraction of uniform-random points in the bound box with zero violation."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if rng is None:
        rng = np.random.default_rng(0)
    span = problem.upper - problem.lower
    feasible = 0
    for _ in range(samples):
        x = problem.lower + rng.random(problem.n) * span
        if make_solution(problem, x).violation == 0.0:
            feasible += 1
    return feasible / samples


__all__ = [
    "Gripper",
    "LirCmop",
    "LIRCMOP_NAMES",
    "PROBLEM_NAMES",
    "estimate_feasible_ratio",
    "front_path",
    "gripper_kinematics",
    "lir_cmop_evaluate",
    "load_front",
    "problem_by_name",
    "reference_front",
    "save_front",
]
