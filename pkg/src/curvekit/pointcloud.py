"""Scalar curvature of sampled manifolds from ball-volume growth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import GraphError

DEFAULT_RADII = 8
DEFAULT_PERCENTILES = (5.0, 25.0)


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


@dataclass(frozen=True)
class BallVolumeProfile:
    center: int
    radii: np.ndarray
    ratios: np.ndarray
    n: int


def _check_radii(radii) -> np.ndarray:
    r = np.asarray(radii, float)
    if r.ndim != 1 or len(r) == 0:
        raise GraphError("need at least one radius")
    if np.any(r <= 0) or np.any(np.diff(r) <= 0):
        raise GraphError("radii must be positive and strictly increasing")
    return r


def auto_radii(d: np.ndarray, x: int, count: int = DEFAULT_RADII, percentiles=DEFAULT_PERCENTILES) -> np.ndarray:
    """Geometric radius grid between two percentiles of the distances from ``x``."""
    row = np.asarray(d[x], float)
    row = row[np.isfinite(row) & (np.arange(len(row)) != x)]
    if len(row) == 0:
        raise GraphError("point has no finite distances to other points")
    lo, hi = np.percentile(row, percentiles)
    if not 0 < lo < hi:
        raise GraphError("distance percentiles do not give a usable radius range")
    return np.geomspace(lo, hi, count)


def ball_volume_profile(d: np.ndarray, x: int, radii, n: int) -> BallVolumeProfile:
    """Normalised ball counts ``#{j != x: d(x, j) <= r} / ((N - 1) v_n r^n)`` per radius.

    The centre is left out of its own ball: counting it adds ``1 / r^n`` to
    the ratio curve, which the quadratic fit reads as positive curvature.
    """
    if n < 1:
        raise GraphError("dimension must be at least 1")
    r = _check_radii(radii)
    row = np.delete(np.asarray(d[x], float), x)
    counts = np.searchsorted(np.sort(row), r, side="right")
    ratios = counts / (max(len(row), 1) * unit_ball_volume(n) * r**n)
    return BallVolumeProfile(x, r, ratios, n)


def scalar_estimate(d: np.ndarray, x: int, radii=None, n: int = 2) -> float:
    """Fit ``ratio ~ c0 + c1 r^2`` and return ``-6 (n + 2) c1 / c0``."""
    if radii is None:
        radii = auto_radii(d, x)
    prof = ball_volume_profile(d, x, radii, n)
    if len(prof.radii) < 3:
        raise GraphError("need at least three radii for the quadratic fit")
    design = np.column_stack([np.ones_like(prof.radii), prof.radii**2])
    coef, _, rank, _ = np.linalg.lstsq(design, prof.ratios, rcond=None)
    c0, c1 = coef
    if rank < 2 or not c0 > 0:
        raise GraphError(f"degenerate ball-volume fit at point {x}")
    return float(-6.0 * (n + 2) * c1 / c0)


def scalar_estimates(d: np.ndarray, n: int, radii=None) -> np.ndarray:
    """Estimate at every point; ``radii=None`` picks an automatic grid per point."""
    d = np.asarray(d, float)
    return np.array([scalar_estimate(d, x, radii, n) for x in range(len(d))])
