"""Inverted generational distance, exact hypervolume, and reference points."""
from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

IGD_CHUNK = 2048
GRIPPER_REFERENCE = (5.0, 800.0)


def igd(reference: np.ndarray, approximation: np.ndarray) -> float:
    """Mean distance from each reference point to its nearest approximation point."""
    ref = np.atleast_2d(np.asarray(reference, dtype=float))
    if ref.size == 0:
        raise ValueError("reference front must be nonempty")
    approx = np.atleast_2d(np.asarray(approximation, dtype=float))
    if approx.size == 0:
        return float("inf")
    if ref.shape[1] != approx.shape[1]:
        raise ValueError("reference and approximation dimensions differ")
    total = 0.0
    for start in range(0, ref.shape[0], IGD_CHUNK):
        chunk = ref[start : start + IGD_CHUNK]
        total += float(np.sum(np.min(cdist(chunk, approx), axis=1)))
    return total / ref.shape[0]


def hypervolume(points: np.ndarray, z_r: np.ndarray) -> float:
    """Exact Lebesgue measure dominated by the points and bounded by z_r."""
    z = np.asarray(z_r, dtype=float).ravel()
    m = z.size
    if m not in (2, 3):
        raise ValueError(f"hypervolume supports 2 or 3 objectives, got {m}")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        return 0.0
    if pts.shape[1] != m:
        raise ValueError("points and reference point dimensions differ")
    pts = pts[np.all(pts < z, axis=1)]
    if pts.shape[0] == 0:
        return 0.0
    if m == 2:
        return _hv_2d(pts, z)
    return _hv_3d(pts, z)


def _hv_2d(pts: np.ndarray, z: np.ndarray) -> float:
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    best_f2 = z[1]
    total = 0.0
    for f1, f2 in pts[order]:
        if f2 < best_f2:
            total += (z[0] - f1) * (best_f2 - f2)
            best_f2 = f2
    return total


def _hv_3d(pts: np.ndarray, z: np.ndarray) -> float:
    """Sweep ascending f3 slices, each weighted by the 2-D area of the active set."""
    order = np.argsort(pts[:, 2], kind="stable")
    pts = pts[order]
    levels = np.unique(pts[:, 2])
    heights = np.diff(np.concatenate([levels, [z[2]]]))
    total = 0.0
    for level, height in zip(levels, heights):
        active = pts[pts[:, 2] <= level, :2]
        total += _hv_2d(active, z[:2]) * height
    return total


def reference_point(front: np.ndarray, problem_name: str | None = None) -> np.ndarray:
    """Reference point at 1.2 times the nadir of the front; fixed for the gripper.

    Components whose nadir is nonpositive (where scaling would not move past
    the nadir) are padded to nadir + 1e-6 instead.
    """
    if problem_name is not None and problem_name.strip().lower() == "gripper":
        return np.array(GRIPPER_REFERENCE)
    pts = np.atleast_2d(np.asarray(front, dtype=float))
    if pts.size == 0:
        raise ValueError("front must be nonempty")
    nadir = pts.max(axis=0)
    z = 1.2 * nadir
    degenerate = z <= nadir
    z[degenerate] = nadir[degenerate] + 1e-6
    return z
