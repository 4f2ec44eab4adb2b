"""Seeded random point clouds for experiments and the verification suites."""

from __future__ import annotations

import numpy as np

from .sig import PointSet

__all__ = ["DISTRIBUTIONS", "generate_points"]

DISTRIBUTIONS = ("uniform-box", "gaussian", "clustered")

_CLUSTER_COUNT = 3
_CLUSTER_STD = 0.05


def generate_points(n: int, dim: int, distribution: str = "uniform-box", seed: int = 0) -> PointSet:
    """n points in R^dim from the named distribution, bit-identical per seed.

    uniform-box fills [0, 1]^dim, gaussian is standard normal, clustered puts
    tight normal blobs (std 0.05) around 3 uniform centers.
    """
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n}")
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    if distribution == "uniform-box":
        coords = rng.uniform(0.0, 1.0, size=(n, dim))
    elif distribution == "gaussian":
        coords = rng.standard_normal(size=(n, dim))
    elif distribution == "clustered":
        centers = rng.uniform(0.0, 1.0, size=(_CLUSTER_COUNT, dim))
        labels = rng.integers(0, _CLUSTER_COUNT, size=n)
        coords = centers[labels] + _CLUSTER_STD * rng.standard_normal(size=(n, dim))
    else:
        raise ValueError(
            f"unknown distribution {distribution!r}; expected one of {', '.join(DISTRIBUTIONS)}"
        )
    return PointSet(points=coords)
