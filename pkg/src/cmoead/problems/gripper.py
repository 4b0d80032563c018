"""Two-objective robot-gripper linkage design problem.

Decision vector (a, b, c, e, f, l, delta): link lengths a, b, c, offset e,
end-plate length f, base length l (mm), and jaw angle delta (rad). Minimizes
the force-transmission ratio P / min_z F_k and the total element length,
subject to eight geometric and force constraints (>= 0 convention).
"""
from __future__ import annotations

import numpy as np

from ..core import Problem

Y_MIN = 50.0
Y_G = 150.0
Y_MAX = 100.0
Z_MAX = 100.0
P_FORCE = 100.0
F_G = 50.0
FORCE_SENTINEL = 1e6

LOWER = np.array([10.0, 10.0, 100.0, 0.0, 10.0, 100.0, 1.0])
UPPER = np.array([150.0, 150.0, 200.0, 50.0, 150.0, 300.0, 3.14])


def apply_link_rules(x: np.ndarray) -> np.ndarray:
    """Overwrite f when the geometry rules demand it; otherwise keep it."""
    a, b, c, e, f, l, delta = (float(v) for v in x)
    if a < 4.0 * b and c < a + b:
        f = 2.0 * e + 10.0
    elif a < 4.0 * b and c > a + b:
        f = e + 50.0
    return np.array([a, b, c, e, f, l, delta])


def _linkage(
    x: np.ndarray,
    z: np.ndarray,
    p: float,
    literal_y: bool,
    literal_g: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Gripping force and end displacement over displacement(s) z; NaN when the
    triangle (a, b, g) cannot close (unassemblable geometry)."""
    a, b, c, e, f, l, delta = (float(v) for v in x)
    z = np.asarray(z, dtype=float)
    lz = l - z
    phi = np.arctan2(e, lz)
    g = np.hypot(lz, e)
    if literal_g:
        g = g + phi
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_alpha = (a * a + g * g - b * b) / (2.0 * a * g)
        cos_beta = (b * b + g * g - a * a) / (2.0 * b * g)
    ok = (np.abs(cos_alpha) <= 1.0) & (np.abs(cos_beta) <= 1.0) & (g > 0.0)
    alpha = np.arccos(np.where(ok, cos_alpha, 0.0))
    beta = np.arccos(np.where(ok, cos_beta, 0.0)) - phi
    with np.errstate(divide="ignore", invalid="ignore"):
        fk = p * b * np.sin(alpha + beta) / (2.0 * c * np.cos(alpha))
    if literal_y:
        y = 2.0 * (e + f + c + np.sin(beta + delta))
    else:
        y = 2.0 * (e + f + c * np.sin(beta + delta))
    nan = np.full_like(g, np.nan)
    return np.where(ok, fk, nan), np.where(ok, y, nan)


def gripper_kinematics(
    x: np.ndarray,
    z: float,
    p: float = P_FORCE,
    literal_y: bool = False,
    literal_g: bool = False,
) -> tuple[float, float]:
    """Gripping force F_k and end displacement y at actuator displacement z.

    Takes x = (a, b, c, e, f, l, delta) as given (no rule rewriting). Returns
    (nan, nan) for unassemblable geometry.
    """
    fk, y = _linkage(np.asarray(x, dtype=float), np.array([float(z)]), p, literal_y, literal_g)
    return float(fk[0]), float(y[0])


class Gripper(Problem):
    """The gripper design problem on its native bounds."""

    def __init__(self, z_samples: int = 100, literal_y: bool = False, literal_g: bool = False):
        if z_samples < 2:
            raise ValueError("z_samples must cover both endpoints of [0, Z_MAX]")
        super().__init__("gripper", LOWER, UPPER, 2)
        self.z_samples = int(z_samples)
        self.literal_y = bool(literal_y)
        self.literal_g = bool(literal_g)
        self._z_grid = np.linspace(0.0, Z_MAX, self.z_samples)

    def evaluate(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = apply_link_rules(np.asarray(x, dtype=float))
        a, b, c, e, f, l, delta = (float(v) for v in x)
        fk, y = _linkage(x, self._z_grid, P_FORCE, self.literal_y, self.literal_g)
        no_eq = np.empty(0)
        if np.any(np.isnan(fk)) or np.any(np.isnan(y)):
            nan = float("nan")
            return np.array([nan, nan]), np.full(8, nan), no_eq
        min_fk = float(np.min(fk))
        f1 = P_FORCE / min_fk if min_fk > 0.0 else FORCE_SENTINEL
        f2 = a + b + c + e + l
        y_start = float(y[0])
        y_end = float(y[-1])
        cons = np.array(
            [
                Y_MIN - y_end,
                y_end,
                y_start - Y_MAX,
                Y_G - y_start,
                (a + b) ** 2 - l * l - e * e,
                (l - Z_MAX) ** 2 + (a - e) ** 2 - b * b,
                l - Z_MAX,
                min_fk - F_G,
            ]
        )
        return np.array([f1, f2]), cons, no_eq
