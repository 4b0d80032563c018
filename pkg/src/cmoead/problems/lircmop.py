"""Fourteen box-bounded test problems with large infeasible regions.

All problems have n = 30 decision variables on [0, 1]. Ids 1-12 have two
objectives; ids 13-14 have three. Constraints follow the c(x) >= 0 convention.
"""
from __future__ import annotations

import numpy as np

from ..core import Problem

N_VARS = 30
# 0-based index sets: J1 = {3,5,...,29}, J2 = {2,4,...,30}, J = {3,...,30} (1-based)
J1 = np.arange(2, 29, 2)
J2 = np.arange(1, 30, 2)
J_ALL = np.arange(2, 30)
# per-index target frequencies used by ids 5-12: sin(0.5*(i/30)*pi*x1), i 1-based
FREQ1 = 0.5 * np.pi * (J1 + 1) / 30.0
FREQ2 = 0.5 * np.pi * (J2 + 1) / 30.0

ELLIPSE_ANGLE = -0.25 * np.pi
ELLIPSE_RADIUS = 0.1
SINE_ANGLE = 0.25 * np.pi

# id -> (p_k, q_k, a_k, b_k) for the elliptical infeasible regions
ELLIPSES: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = {
    5: (np.array([1.6, 2.5]), np.array([1.6, 2.5]), np.array([2.0, 2.0]), np.array([4.0, 8.0])),
    6: (np.array([1.8, 2.8]), np.array([1.8, 2.8]), np.array([2.0, 2.0]), np.array([8.0, 8.0])),
    7: (
        np.array([1.2, 2.25, 3.5]),
        np.array([1.2, 2.25, 3.5]),
        np.array([2.0, 2.5, 2.5]),
        np.array([6.0, 12.0, 10.0]),
    ),
    8: (
        np.array([1.2, 2.25, 3.5]),
        np.array([1.2, 2.25, 3.5]),
        np.array([2.0, 2.5, 2.5]),
        np.array([6.0, 12.0, 10.0]),
    ),
    9: (np.array([1.4]), np.array([1.4]), np.array([1.5]), np.array([6.0])),
    10: (np.array([1.1]), np.array([1.2]), np.array([2.0]), np.array([4.0])),
    11: (np.array([1.2]), np.array([1.2]), np.array([1.5]), np.array([5.0])),
    12: (np.array([1.6]), np.array([1.6]), np.array([1.5]), np.array([6.0])),
}
# id -> offset d in the sine-wave constraint of ids 9-12
SINE_OFFSET = {9: 2.0, 10: 1.0, 11: 2.1, 12: 2.5}
# ids whose second shape function is 1 - x1^2 (the rest use 1 - sqrt(x1))
SQUARE_SHAPE_IDS = frozenset({1, 3, 6, 8, 9, 12})


def ellipse_values(f1, f2, pid: int):
    """Rotated-ellipse constraint left-hand sides at objective point(s) (f1, f2)."""
    p, q, a, b = ELLIPSES[pid]
    f1 = np.asarray(f1, dtype=float)[..., None]
    f2 = np.asarray(f2, dtype=float)[..., None]
    cos_t = np.cos(ELLIPSE_ANGLE)
    sin_t = np.sin(ELLIPSE_ANGLE)
    u = (f1 - p) * cos_t - (f2 - q) * sin_t
    v = (f1 - p) * sin_t + (f2 - q) * cos_t
    return u * u / (a * a) + v * v / (b * b)


def sine_value(f1, f2, pid: int):
    """Sine-wave constraint left-hand side for ids 9-12 at objective point(s)."""
    f1 = np.asarray(f1, dtype=float)
    f2 = np.asarray(f2, dtype=float)
    s = f1 * np.sin(SINE_ANGLE) + f2 * np.cos(SINE_ANGLE)
    t = f1 * np.cos(SINE_ANGLE) - f2 * np.sin(SINE_ANGLE)
    return s - np.sin(4.0 * np.pi * t) - SINE_OFFSET[pid]


class LirCmop(Problem):
    """One problem instance selected by id in 1..14."""

    def __init__(self, pid: int):
        if not 1 <= pid <= 14:
            raise ValueError(f"problem id must be in 1..14, got {pid}")
        self.id = int(pid)
        m = 3 if pid >= 13 else 2
        super().__init__(f"lircmop{pid}", np.zeros(N_VARS), np.ones(N_VARS), m)

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        pid = self.id
        x = np.asarray(x, dtype=float)
        x1 = x[0]
        no_eq = np.empty(0)
        if pid <= 4:
            g1 = float(np.sum((x[J1] - np.sin(0.5 * np.pi * x1)) ** 2))
            g2 = float(np.sum((x[J2] - np.cos(0.5 * np.pi * x1)) ** 2))
            f1 = x1 + g1
            shape = 1.0 - x1 * x1 if pid in SQUARE_SHAPE_IDS else 1.0 - np.sqrt(x1)
            f2 = shape + g2
            cons = [(0.51 - g1) * (g1 - 0.5), (0.51 - g2) * (g2 - 0.5)]
            if pid >= 3:
                cons.append(np.sin(20.0 * np.pi * x1) - 0.5)
            return np.array([f1, f2]), np.array(cons), no_eq
        if pid <= 12:
            g1 = float(np.sum((x[J1] - np.sin(FREQ1 * x1)) ** 2))
            g2 = float(np.sum((x[J2] - np.cos(FREQ2 * x1)) ** 2))
            shape = 1.0 - x1 * x1 if pid in SQUARE_SHAPE_IDS else 1.0 - np.sqrt(x1)
            if pid <= 8:
                f1 = x1 + 10.0 * g1 + 0.7057
                f2 = shape + 10.0 * g2 + 0.7057
            else:
                f1 = 1.7057 * x1 * (10.0 * g1 + 1.0)
                f2 = 1.7057 * shape * (10.0 * g2 + 1.0)
            cons = list(np.ravel(ellipse_values(f1, f2, pid)) - ELLIPSE_RADIUS)
            if pid >= 9:
                cons.append(float(sine_value(f1, f2, pid)))
            return np.array([f1, f2]), np.array(cons), no_eq
        g1 = float(np.sum(10.0 * (x[J_ALL] - 0.5) ** 2))
        scale = 1.7057 + g1
        t1 = 0.5 * np.pi * x[0]
        t2 = 0.5 * np.pi * x[1]
        f = np.array(
            [
                scale * np.cos(t1) * np.cos(t2),
                scale * np.cos(t1) * np.sin(t2),
                scale * np.sin(t1),
            ]
        )
        gg = float(np.sum(f * f))
        cons = [(gg - 9.0) * (gg - 4.0), (gg - 3.61) * (gg - 3.24)]
        if pid == 14:
            cons.append((gg - 3.0625) * (gg - 2.56))
        return f, np.array(cons), no_eq


_INSTANCES: dict[int, LirCmop] = {}


def lir_cmop_evaluate(pid: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Objectives and inequality-constraint values of problem `pid` at x."""
    if pid not in _INSTANCES:
        _INSTANCES[pid] = LirCmop(pid)
    objectives, ineq, _ = _INSTANCES[pid].evaluate(x)
    return objectives, ineq
