"""Lower-bound search for the norm's packing constant, plus the universal 5^d cap.

The packing constant of a d-dimensional norm is the largest number of points in
the closed ball of radius 2 that are pairwise at distance >= 1 and include the
center.  Exact values are out of scope; this module certifies lower bounds by
greedy insertion and exposes the volume-argument upper bound 5^d.

The candidate stream of each restart starts with a deterministic pass over the
integer lattice points of the ball (sorted by norm, then lexicographically) and
continues with points sampled uniformly from the ball by rejection from its
bounding box.  The lattice pass makes tight configurations reachable that have
zero slack and are therefore missed by random sampling with probability one:
the 5-point grid on the line, the 25-point grid for the planar max norm, and
the 13 integer points of the Euclidean disk of radius 2.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .norms import NormSpec, ball_box_halfwidths, norm_values

__all__ = [
    "PackingConfig",
    "PackingValidity",
    "PackingBounds",
    "packing_upper_bound",
    "validate_packing",
    "greedy_pack",
    "packing_bounds",
    "euclidean_19_point_config",
]

BALL_RADIUS = 2.0
MIN_SEPARATION = 1.0
VALIDATION_TOL = 1e-12

# lattice pass is skipped when the bounding box holds more integer points than this
_LATTICE_CAP = 300_000
_SAMPLE_CHUNK = 4096


def packing_upper_bound(dim: int) -> int:
    """Universal cap 5^dim on the packing constant of any dim-dimensional norm."""
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    return 5**dim


@dataclass(frozen=True, eq=False)
class PackingConfig:
    """Candidate packing witness: points in B(o, 2), pairwise >= 1 apart, origin included."""

    norm: NormSpec
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != self.norm.dim:
            raise ValueError(f"points must be an (n, {self.norm.dim}) array, got shape {pts.shape}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class PackingValidity:
    ok: bool
    violations: tuple[str, ...]


def validate_packing(cfg: PackingConfig, tol: float = VALIDATION_TOL) -> PackingValidity:
    """Check containment, pairwise separation, and origin membership (report-style)."""
    problems: list[str] = []
    pts = cfg.points
    norms = norm_values(cfg.norm, pts)
    outside = np.flatnonzero(norms > BALL_RADIUS + tol)
    for i in outside:
        problems.append(f"point {i} has norm {norms[i]:.17g} > {BALL_RADIUS}")
    diffs = pts[:, None, :] - pts[None, :, :]
    dists = norm_values(cfg.norm, diffs)
    iu, ju = np.triu_indices(len(pts), k=1)
    close = dists[iu, ju] < MIN_SEPARATION - tol
    for a, b in zip(iu[close].tolist(), ju[close].tolist()):
        problems.append(f"points {a} and {b} are at distance {dists[a, b]:.17g} < {MIN_SEPARATION}")
    if not np.any(norms <= tol):
        problems.append("origin absent")
    return PackingValidity(not problems, tuple(problems))


def _lattice_candidates(norm: NormSpec) -> np.ndarray:
    """Integer points of B(o, 2) in (norm value, lexicographic) order; empty if too many."""
    half = np.floor(ball_box_halfwidths(norm, BALL_RADIUS)).astype(np.int64)
    count = 1
    for h in half:
        count *= 2 * int(h) + 1
        if count > _LATTICE_CAP:
            return np.empty((0, norm.dim))
    axes = [np.arange(-int(h), int(h) + 1) for h in half]
    grid = np.array(list(itertools.product(*axes)), dtype=np.float64)
    values = norm_values(norm, grid)
    keep = values <= BALL_RADIUS
    grid, values = grid[keep], values[keep]
    order = np.lexsort(tuple(grid[:, c] for c in reversed(range(norm.dim))) + (values,))
    return grid[order]


def _ball_sampler(norm: NormSpec, rng: np.random.Generator):
    """Yield fixed-size chunks of points uniform in B(o, 2).

    Chunks are cut from a stream whose content depends only on the rng state,
    never on how much the caller consumes, so a larger candidate budget extends
    a smaller one prefix-exactly.
    """
    half = ball_box_halfwidths(norm, BALL_RADIUS)
    while True:
        box = rng.uniform(-1.0, 1.0, size=(_SAMPLE_CHUNK, norm.dim)) * half
        inside = box[norm_values(norm, box) <= BALL_RADIUS]
        if len(inside):
            yield inside


def _insert_chunk(norm: NormSpec, accepted: list[np.ndarray], chunk: np.ndarray):
    """Greedily insert chunk rows (in order) that stay >= 1 from all accepted points."""
    base = np.array(accepted)
    dists = norm_values(norm, chunk[:, None, :] - base[None, :, :])
    fits_base = (dists >= MIN_SEPARATION).all(axis=1)
    fresh: list[np.ndarray] = []
    for idx in np.flatnonzero(fits_base):
        cand = chunk[idx]
        if all(float(norm_values(norm, cand - q)) >= MIN_SEPARATION for q in fresh):
            fresh.append(cand)
    accepted.extend(fresh)


def _single_restart(norm: NormSpec, seed: int, restart: int, candidates: int, lattice: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng([seed, restart])
    accepted: list[np.ndarray] = [np.zeros(norm.dim)]
    for start in range(0, len(lattice), _SAMPLE_CHUNK):
        _insert_chunk(norm, accepted, lattice[start : start + _SAMPLE_CHUNK])
    remaining = candidates
    sampler = _ball_sampler(norm, rng)
    while remaining > 0:
        chunk = next(sampler)[:remaining]
        remaining -= len(chunk)
        _insert_chunk(norm, accepted, chunk)
    return np.array(accepted)


def greedy_pack(
    norm: NormSpec,
    seed: int = 0,
    restarts: int = 1,
    candidates: int = 10_000,
    workers: int = 1,
) -> PackingConfig:
    """Best packing found over ``restarts`` independent greedy runs.

    Each restart starts from the origin, walks the lattice candidates, then
    consumes ``candidates`` uniform samples, inserting every point that keeps
    all pairwise distances >= 1.  Restart r draws from default_rng([seed, r]),
    so results are reproducible, independent of worker count, and monotone in
    both budget parameters (the best over restarts is kept; ties go to the
    earliest restart).
    """
    if restarts < 1 or candidates < 1:
        raise ValueError("restarts and candidates must be positive")
    lattice = _lattice_candidates(norm)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda r: _single_restart(norm, seed, r, candidates, lattice), range(restarts)))
    else:
        runs = [_single_restart(norm, seed, r, candidates, lattice) for r in range(restarts)]
    best = max(runs, key=len)  # max() keeps the first of equally-sized runs
    return PackingConfig(norm=norm, points=best)


@dataclass(frozen=True)
class PackingBounds:
    lower: int
    upper: int
    witness: PackingConfig


def packing_bounds(
    norm: NormSpec,
    seed: int = 0,
    restarts: int = 20,
    candidates: int = 100_000,
    workers: int = 1,
) -> PackingBounds:
    """Certified lower bound (greedy witness) and the 5^d upper bound."""
    witness = greedy_pack(norm, seed=seed, restarts=restarts, candidates=candidates, workers=workers)
    return PackingBounds(lower=len(witness), upper=packing_upper_bound(norm.dim), witness=witness)


def euclidean_19_point_config(norm: NormSpec | None = None) -> PackingConfig:
    """Origin + hexagon at radius 1 + twelve-gon at radius 2, in the Euclidean plane.

    The two rings share their angle grid so that radially aligned pairs sit at
    distance exactly 1 up to one ulp, inside the validation tolerance.
    """
    from .norms import lp_norm

    if norm is None:
        norm = lp_norm(2.0, 2)
    angles = [2.0 * math.pi * i / 12.0 for i in range(12)]
    ring = [(2.0 * math.cos(a), 2.0 * math.sin(a)) for a in angles]
    hexagon = [(math.cos(angles[i]), math.sin(angles[i])) for i in range(0, 12, 2)]
    points = [(0.0, 0.0)] + hexagon + ring
    return PackingConfig(norm=norm, points=np.array(points))
