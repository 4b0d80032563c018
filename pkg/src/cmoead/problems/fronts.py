"""Reference Pareto fronts for the two- and three-objective test problems.

Two-objective fronts are built from a candidate pool: the attainable lower
envelope (distance terms at their constraint-admissible minimum), the
constraint-boundary curves (ellipses and the sine wave, nudged to the feasible
side), and the two objective-axis rays. The pool is filtered for attainability
and feasibility, reduced to its nondominated subset, and resampled uniformly
by arc length. Three-objective fronts are spherical shells sampled on an
(x1, x2) grid. Construction is deterministic.
"""
from __future__ import annotations

import os
from math import isqrt
from pathlib import Path

import numpy as np

from ..core import nondominated_mask
from .lircmop import (
    ELLIPSE_ANGLE,
    ELLIPSE_RADIUS,
    ELLIPSES,
    SINE_ANGLE,
    SINE_OFFSET,
    SQUARE_SHAPE_IDS,
    ellipse_values,
    sine_value,
)

ENVELOPE_SAMPLES = 100001
BOUNDARY_SAMPLES = 100001
SINE_SAMPLES = 240001
RAY_SAMPLES = 50001
RAY_MAX = 12.0
FEASIBLE_NUDGE = 1e-12


def _shape(pid: int, x1: np.ndarray) -> np.ndarray:
    return 1.0 - x1 * x1 if pid in SQUARE_SHAPE_IDS else 1.0 - np.sqrt(x1)


def _envelope_curve(pid: int) -> np.ndarray:
    """Dense (f1, f2) samples with distance terms at their admissible minimum."""
    x1 = np.linspace(0.0, 1.0, ENVELOPE_SAMPLES)
    if pid <= 4:
        if pid >= 3:
            # restrict to the bands sin(20*pi*x1) >= 0.5, edges nudged inward
            edges_lo = (1.0 + 12.0 * np.arange(10)) / 120.0 + 1e-9
            edges_hi = (5.0 + 12.0 * np.arange(10)) / 120.0 - 1e-9
            x1 = np.sort(np.concatenate([x1, edges_lo, edges_hi]))
            x1 = x1[np.sin(20.0 * np.pi * x1) >= 0.5]
        return np.column_stack([x1 + 0.5, _shape(pid, x1) + 0.5])
    if pid <= 8:
        return np.column_stack([x1 + 0.7057, _shape(pid, x1) + 0.7057])
    return np.column_stack([1.7057 * x1, 1.7057 * _shape(pid, x1)])


def _envelope_floor(pid: int, u: np.ndarray) -> np.ndarray:
    """Minimum attainable f2 for each f1 value; +inf where f1 is unattainable."""
    u = np.asarray(u, dtype=float)
    out = np.full(u.shape, np.inf)
    if pid <= 8:
        base = 0.7057
        on_curve = (u >= base) & (u <= base + 1.0)
        out[on_curve] = _shape(pid, u[on_curve] - base) + base
        out[u > base + 1.0] = base
    else:
        top = 1.7057
        on_curve = (u >= 0.0) & (u <= top)
        out[on_curve] = top * _shape(pid, u[on_curve] / top)
        out[u > top] = 0.0
    return out


def _ellipse_boundaries(pid: int) -> np.ndarray:
    """Points on each elliptical constraint boundary, nudged to the feasible side."""
    p, q, a, b = ELLIPSES[pid]
    psi = np.linspace(0.0, 2.0 * np.pi, BOUNDARY_SAMPLES)
    root = np.sqrt(ELLIPSE_RADIUS * (1.0 + FEASIBLE_NUDGE))
    cos_t = np.cos(ELLIPSE_ANGLE)
    sin_t = np.sin(ELLIPSE_ANGLE)
    curves = []
    for k in range(p.size):
        u = a[k] * root * np.cos(psi)
        v = b[k] * root * np.sin(psi)
        f1 = p[k] + u * cos_t + v * sin_t
        f2 = q[k] - u * sin_t + v * cos_t
        curves.append(np.column_stack([f1, f2]))
    return np.vstack(curves)


def _sine_boundary(pid: int) -> np.ndarray:
    """Points on the sine-wave constraint boundary, nudged to the feasible side."""
    t = np.linspace(-3.0, 3.0, SINE_SAMPLES)
    s = SINE_OFFSET[pid] + np.sin(4.0 * np.pi * t) + FEASIBLE_NUDGE
    inv = 1.0 / np.sqrt(2.0)
    return np.column_stack([(s + t) * inv, (s - t) * inv])


def _axis_rays(pid: int) -> np.ndarray:
    """Dense samples of the two objective-axis rays of the attainable region."""
    if pid <= 8:
        u0, v0 = 0.7057, 1.7057
    else:
        u0, v0 = 0.0, 1.7057
    vertical_v = np.linspace(v0, RAY_MAX, RAY_SAMPLES)
    horizontal_u = np.linspace(v0, RAY_MAX, RAY_SAMPLES)
    vert = np.column_stack([np.full(RAY_SAMPLES, u0), vertical_v])
    base_f2 = 0.7057 if pid <= 8 else 0.0
    horiz = np.column_stack([horizontal_u, np.full(RAY_SAMPLES, base_f2)])
    return np.vstack([vert, horiz])


def _feasible_mask_2d(pid: int, points: np.ndarray) -> np.ndarray:
    """Objective-space constraint satisfaction for ids 5-12 (ids 1-4 have none)."""
    if pid <= 4:
        return np.ones(points.shape[0], dtype=bool)
    values = ellipse_values(points[:, 0], points[:, 1], pid)
    mask = np.all(values >= ELLIPSE_RADIUS, axis=1)
    if pid >= 9:
        mask &= sine_value(points[:, 0], points[:, 1], pid) >= 0.0
    return mask


def _resample_by_arc_length(points: np.ndarray, size: int) -> np.ndarray:
    order = np.argsort(points[:, 0], kind="stable")
    pts = points[order]
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    if cum[-1] == 0.0:
        return np.repeat(pts[:1], size, axis=0)
    targets = np.linspace(0.0, cum[-1], size)
    idx = np.clip(np.searchsorted(cum, targets), 0, pts.shape[0] - 1)
    return pts[idx]


def _front_2d(pid: int, size: int) -> np.ndarray:
    parts = [_envelope_curve(pid)]
    if pid >= 5:
        parts.append(_ellipse_boundaries(pid))
        parts.append(_axis_rays(pid))
    if pid >= 9:
        parts.append(_sine_boundary(pid))
    pool = np.vstack(parts)
    if pid >= 5:
        attainable = pool[:, 1] >= _envelope_floor(pid, pool[:, 0]) - 1e-9
        pool = pool[attainable]
    pool = pool[_feasible_mask_2d(pid, pool)]
    pool = pool[nondominated_mask(pool)]
    if pool.shape[0] == 0:
        raise RuntimeError(f"empty candidate pool for problem id {pid}")
    return _resample_by_arc_length(pool, size)


def _front_3d(pid: int, size: int) -> np.ndarray:
    radius = 1.7057 if pid == 13 else 1.75 * (1.0 + 1e-9)
    k = isqrt(size)
    if k * k < size:
        k += 1
    t1 = 0.5 * np.pi * np.linspace(0.0, 1.0, k)
    t2 = 0.5 * np.pi * np.linspace(0.0, 1.0, k)
    g1, g2 = np.meshgrid(t1, t2, indexing="ij")
    pts = radius * np.column_stack(
        [
            (np.cos(g1) * np.cos(g2)).ravel(),
            (np.cos(g1) * np.sin(g2)).ravel(),
            np.sin(g1).ravel(),
        ]
    )
    if pts.shape[0] > size:
        idx = np.round(np.linspace(0, pts.shape[0] - 1, size)).astype(int)
        pts = pts[idx]
    return pts


def reference_front(problem: int | str, size: int | None = None) -> np.ndarray:
    """Uniformly spaced reference front of one test problem.

    Accepts an id in 1..14 or a problem name like "lircmop7". Defaults to 1000
    points for two objectives and 10000 for three. The gripper problem has no
    known front and is rejected.
    """
    pid = _coerce_id(problem)
    if pid >= 13:
        return _front_3d(pid, 10000 if size is None else int(size))
    return _front_2d(pid, 1000 if size is None else int(size))


def _coerce_id(problem: int | str) -> int:
    if isinstance(problem, str):
        name = problem.strip().lower()
        if name.startswith("lircmop"):
            name = name[len("lircmop") :]
        if not name.isdigit():
            raise ValueError(f"no reference front available for problem {problem!r}")
        problem = int(name)
    pid = int(problem)
    if not 1 <= pid <= 14:
        raise ValueError(f"no reference front available for problem id {pid}")
    return pid


def front_path(directory: str | Path, name: str) -> Path:
    """Conventional location of a cached front file."""
    return Path(directory) / f"{name}.txt"


def save_front(points: np.ndarray, path: str | Path) -> None:
    """Write one objective vector per line, space-separated, atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.tmp-{os.getpid()}")
    np.savetxt(tmp, np.atleast_2d(points), fmt="%.17g")
    os.replace(tmp, path)


def load_front(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, ndmin=2)


__all__ = [
    "reference_front",
    "front_path",
    "save_front",
    "load_front",
]
