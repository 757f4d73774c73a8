"""Planar point handling shared by every algorithm in the package.

Points are plain ``(n, 2)`` float arrays.  Instances are small (a few
hundred points), so the full distance matrix is cheap and most algorithms
compute it once up front.
"""

from __future__ import annotations

import math

import numpy as np


def distance(p, q) -> float:
    """Euclidean distance between two points given as (x, y) pairs."""
    return math.hypot(p[0] - q[0], p[1] - q[1])


def check_points(X) -> np.ndarray:
    """Validate and normalise a point array.

    Accepts anything array-like and returns a float64 array of shape
    (n, 2) with n >= 2, finite coordinates and pairwise distinct rows.

    Raises:
        ValueError: if the input does not describe a valid point set.
    """
    pts = np.asarray(X, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) point array, got shape {pts.shape}")
    if pts.shape[0] < 2:
        raise ValueError("a point set needs at least 2 points")
    if not np.isfinite(pts).all():
        raise ValueError("point coordinates must be finite")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    sorted_pts = pts[order]
    dup = np.all(sorted_pts[1:] == sorted_pts[:-1], axis=1)
    if dup.any():
        i = int(np.argmax(dup))
        a, b = order[i], order[i + 1]
        raise ValueError(f"points {min(a, b)} and {max(a, b)} coincide")
    return pts


def distance_matrix(points: np.ndarray) -> np.ndarray:
    """Full symmetric Euclidean distance matrix for an (n, 2) point array."""
    pts = np.asarray(points, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))
