"""Executable forms of the geometric facts behind the degree bound.

Three ingredients, each checkable on concrete inputs: the bow-and-arrow
inequality relating the gap between two unit vectors to the gap between the
originals, the radial retraction onto the ball of radius 2 and the separation
it preserves between satellite ball centers, and the neighborhood counting
check that combines them at a witness vertex of an influence graph.

Hypothesis tests are exact, non-strict float comparisons.  Conclusion checks
(separations, inequality gaps) carry small absolute slack for roundoff; the
constants live in SEPARATION_SLACK and the suite tolerances that cite it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .norms import NormSpec, evaluate_norm, norm_values, unit_vector
from .sig import Coloring, InfluenceGraph, PointSet, RadiusAssignment, sort_by_radius

__all__ = [
    "SEPARATION_SLACK",
    "SatelliteConfig",
    "CountingReport",
    "project_ball2",
    "project_ball2_many",
    "bow_and_arrow_gap",
    "bow_and_arrow_gaps",
    "sample_nonzero_pairs",
    "satellite_hypotheses",
    "satellite_separation",
    "satellite_separations",
    "sample_satellite_configs",
    "counting_check",
]

# absolute slack for conclusion checks; hypothesis comparisons stay exact
SEPARATION_SLACK = 1e-9

_CHUNK = 4096


def project_ball2(norm: NormSpec, x) -> np.ndarray:
    """x unchanged if ||x|| <= 2, else 2x/||x|| (radial retraction onto B(o, 2))."""
    x = np.asarray(x, dtype=np.float64)
    value = evaluate_norm(norm, x)
    if value <= 2.0:
        return x.copy()
    return x * (2.0 / value)


def project_ball2_many(norm: NormSpec, X) -> np.ndarray:
    """Radial retraction applied to every vector along the last axis."""
    X = np.asarray(X, dtype=np.float64)
    values = norm_values(norm, X)
    scale = np.ones_like(values)
    outside = values > 2.0
    scale[outside] = 2.0 / values[outside]
    return X * scale[..., None]


def bow_and_arrow_gap(norm: NormSpec, a, b) -> float:
    """Slack in ||a/||a|| - b/||b|||| >= (||a-b|| - | ||a|| - ||b|| |) / ||b||.

    The inequality holds in every norm for nonzero a, b; a negative return
    beyond roundoff would falsify it.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    norm_a = evaluate_norm(norm, a)
    norm_b = evaluate_norm(norm, b)
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValueError("bow-and-arrow gap requires nonzero vectors")
    left = evaluate_norm(norm, unit_vector(norm, a) - unit_vector(norm, b))
    right = (evaluate_norm(norm, a - b) - abs(norm_a - norm_b)) / norm_b
    return left - right


def bow_and_arrow_gaps(norm: NormSpec, A, B) -> np.ndarray:
    """bow_and_arrow_gap on row-aligned batches of vectors."""
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    norms_a = norm_values(norm, A)
    norms_b = norm_values(norm, B)
    if np.any(norms_a == 0.0) or np.any(norms_b == 0.0):
        raise ValueError("bow-and-arrow gap requires nonzero vectors")
    left = norm_values(norm, A / norms_a[..., None] - B / norms_b[..., None])
    right = (norm_values(norm, A - B) - np.abs(norms_a - norms_b)) / norms_b
    return left - right


def sample_nonzero_pairs(
    norm: NormSpec,
    count: int,
    seed: int = 0,
    box: float = 3.0,
    min_norm: float = 0.05,
) -> tuple[np.ndarray, np.ndarray]:
    """Seeded uniform vector pairs from [-box, box]^d with norms >= min_norm.

    The floor keeps the gap's division by ||b|| from amplifying roundoff past
    the suite tolerance; it excludes a vanishing corner of the sample space.
    """
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    rng = np.random.default_rng(seed)
    rows: list[np.ndarray] = []
    have = 0
    while have < 2 * count:
        draw = rng.uniform(-box, box, size=(_CHUNK, norm.dim))
        keep = draw[norm_values(norm, draw) >= min_norm]
        rows.append(keep)
        have += len(keep)
    flat = np.concatenate(rows)[: 2 * count]
    return flat[:count], flat[count:]


@dataclass(frozen=True, eq=False)
class SatelliteConfig:
    """Two balls around the unit ball, in the frame where the reference ball is B(o, 1)."""

    center1: np.ndarray
    radius1: float
    center2: np.ndarray
    radius2: float

    def __post_init__(self):
        for field in ("center1", "center2"):
            arr = np.asarray(getattr(self, field), dtype=np.float64)
            if arr.ndim != 1:
                raise ValueError(f"{field} must be a flat coordinate vector")
            arr.setflags(write=False)
            object.__setattr__(self, field, arr)
        if self.center1.shape != self.center2.shape:
            raise ValueError("centers have mismatched dimensions")
        for field in ("radius1", "radius2"):
            value = float(getattr(self, field))
            if value < 0.0:
                raise ValueError(f"{field} must be nonnegative, got {value}")
            object.__setattr__(self, field, value)


def _satellite_violation(norm: NormSpec, cfg: SatelliteConfig) -> str | None:
    """Reason the hypotheses fail, or None when they all hold."""
    largest = max(cfg.radius1, cfg.radius2)
    if largest < 1.0:
        return f"larger radius {largest:.17g} is below 1"
    gap = evaluate_norm(norm, cfg.center1 - cfg.center2)
    if gap < largest:
        return f"centers at distance {gap:.17g} < larger radius {largest:.17g}"
    for label, center, radius in (
        ("first", cfg.center1, cfg.radius1),
        ("second", cfg.center2, cfg.radius2),
    ):
        reach = evaluate_norm(norm, center)
        if reach > radius + 1.0:
            return f"{label} ball misses the unit ball (center norm {reach:.17g} > {radius + 1.0:.17g})"
    return None


def satellite_hypotheses(norm: NormSpec, cfg: SatelliteConfig) -> bool:
    """True iff larger radius >= 1, centers >= that radius apart, both balls meet B(o, 1)."""
    return _satellite_violation(norm, cfg) is None


def satellite_separation(norm: NormSpec, cfg: SatelliteConfig) -> float:
    """Distance between the retracted centers; >= 1 whenever the hypotheses hold."""
    why = _satellite_violation(norm, cfg)
    if why is not None:
        raise ValueError(f"satellite hypotheses violated: {why}")
    return evaluate_norm(
        norm, project_ball2(norm, cfg.center1) - project_ball2(norm, cfg.center2)
    )


def satellite_separations(norm: NormSpec, configs) -> np.ndarray:
    """satellite_separation over a batch, rejecting the batch on any bad config."""
    configs = list(configs)
    if not configs:
        return np.empty(0)
    first_centers = np.array([c.center1 for c in configs])
    second_centers = np.array([c.center2 for c in configs])
    first_radii = np.array([c.radius1 for c in configs])
    second_radii = np.array([c.radius2 for c in configs])
    largest = np.maximum(first_radii, second_radii)
    bad = (
        (largest < 1.0)
        | (norm_values(norm, first_centers - second_centers) < largest)
        | (norm_values(norm, first_centers) > first_radii + 1.0)
        | (norm_values(norm, second_centers) > second_radii + 1.0)
    )
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ValueError(
            f"config {i}: satellite hypotheses violated: {_satellite_violation(norm, configs[i])}"
        )
    return norm_values(
        norm,
        project_ball2_many(norm, first_centers) - project_ball2_many(norm, second_centers),
    )


def sample_satellite_configs(
    norm: NormSpec,
    count: int,
    seed: int = 0,
    radius_range: tuple[float, float] = (0.5, 3.0),
    box: float = 4.0,
) -> list[SatelliteConfig]:
    """Rejection-sample hypothesis-satisfying configs, uniformly over the region.

    Radii are uniform in radius_range, centers uniform in [-box, box]^d; draws
    failing any hypothesis are discarded, so coverage has no bias toward easy
    configurations.  Deterministic for a fixed seed.
    """
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    low, high = radius_range
    if not 0.0 <= low <= high:
        raise ValueError(f"radius_range must satisfy 0 <= low <= high, got {radius_range}")
    rng = np.random.default_rng(seed)
    out: list[SatelliteConfig] = []
    empty_rounds = 0
    while len(out) < count:
        first_centers = rng.uniform(-box, box, size=(_CHUNK, norm.dim))
        second_centers = rng.uniform(-box, box, size=(_CHUNK, norm.dim))
        first_radii = rng.uniform(low, high, size=_CHUNK)
        second_radii = rng.uniform(low, high, size=_CHUNK)
        largest = np.maximum(first_radii, second_radii)
        keep = (
            (largest >= 1.0)
            & (norm_values(norm, first_centers - second_centers) >= largest)
            & (norm_values(norm, first_centers) <= first_radii + 1.0)
            & (norm_values(norm, second_centers) <= second_radii + 1.0)
        )
        hits = np.flatnonzero(keep)
        if hits.size == 0:
            empty_rounds += 1
            if empty_rounds > 2000:
                raise RuntimeError(
                    "satellite sampling stalled; the hypothesis region is too thin "
                    f"for radius_range={radius_range} and box={box}"
                )
            continue
        for i in hits[: count - len(out)]:
            out.append(
                SatelliteConfig(
                    center1=first_centers[i],
                    radius1=float(first_radii[i]),
                    center2=second_centers[i],
                    radius2=float(second_radii[i]),
                )
            )
    return out


@dataclass(frozen=True)
class CountingReport:
    """Outcome of the witness-neighborhood audit; all three legs must hold."""

    center: int
    scale: float
    interior_count: int
    interior_bound: int
    interior_ok: bool
    min_projected_separation: float
    separation_ok: bool
    degree: int
    decomposition_bound: int
    decomposition_ok: bool
    passed: bool


def _check_neighbor_coloring(
    coloring: Coloring,
    neighbors: list[int],
    dmat_rows: np.ndarray,
    radii: np.ndarray,
    k: int,
):
    colors = coloring.colors
    if any(c < 1 for c in colors):
        raise ValueError("coloring has nonpositive colors")
    used = {colors[p] for p in neighbors}
    if len(used) > k:
        raise ValueError(
            f"coloring uses {len(used)} colors on the center's neighbors; at most k={k} allowed"
        )
    for a_pos, p in enumerate(neighbors):
        for q in neighbors[a_pos + 1 :]:
            if colors[p] != colors[q]:
                continue
            if dmat_rows[p, q] < max(radii[p], radii[q]):
                raise ValueError(
                    f"coloring is not proper on the auxiliary graph: neighbors {p} and {q} "
                    f"share color {colors[p]} at distance below the larger radius"
                )


def counting_check(
    points: PointSet,
    radii: RadiusAssignment,
    graph: InfluenceGraph,
    coloring: Coloring,
    center: int,
    norm: NormSpec,
) -> CountingReport:
    """Audit the degree-bound argument at a witness vertex.

    In the frame translated to the center and rescaled by its radius: (a) at
    most k-1 other points may lie strictly inside the unit ball, (b) within
    each color class, neighbors outside the open unit ball must stay >= 1
    apart after radial retraction onto B(o, 2), and (c) the degree may not
    exceed the retracted-neighbor total plus k-1.

    Interior membership is decided on the original distances, so points at
    distance exactly the center radius never misclassify through rescaling
    roundoff.  The center must be one of the two smallest-radius vertices;
    pairs of its neighbors then always leave at least one radius at or above
    the center's, which clause (b)'s separation guarantee relies on.
    """
    m = len(points)
    if not (graph.n == m == len(radii)):
        raise ValueError("points, radii, and graph disagree on the number of vertices")
    if len(coloring.colors) != m:
        raise ValueError("coloring does not cover every vertex")
    if not 0 <= center < m:
        raise ValueError(f"center index {center} out of range")
    order = sort_by_radius(radii)
    if center not in order[:2]:
        raise ValueError(
            f"center {center} is not a witness vertex; the two smallest radii "
            f"belong to {order[0]} and {order[1]}"
        )
    k = radii.k
    center_radius = float(radii.radii[center])
    if center_radius == 0.0:
        raise ValueError(
            "center has radius 0 (coincident points); the rescaled frame is undefined"
        )

    dvec = norm_values(norm, points.points - points.points[center])
    neighbors = graph.adjacency_lists()[center]
    if neighbors:
        diffs = points.points[:, None, :] - points.points[None, :, :]
        dmat_rows = norm_values(norm, diffs)
        _check_neighbor_coloring(coloring, neighbors, dmat_rows, radii.radii, k)

    inside = (dvec < center_radius) & (np.arange(m) != center)
    interior_count = int(inside.sum())
    interior_ok = interior_count <= k - 1

    outer = [p for p in neighbors if dvec[p] >= center_radius]
    retracted = project_ball2_many(
        norm, (points.points[outer] - points.points[center]) / center_radius
    )
    min_separation = np.inf
    by_color: dict[int, list[int]] = {}
    for pos, p in enumerate(outer):
        by_color.setdefault(coloring.colors[p], []).append(pos)
    for members in by_color.values():
        if len(members) < 2:
            continue
        cls = retracted[members]
        seps = norm_values(norm, cls[:, None, :] - cls[None, :, :])
        iu, ju = np.triu_indices(len(members), k=1)
        min_separation = min(min_separation, float(seps[iu, ju].min()))
    separation_ok = min_separation >= 1.0 - SEPARATION_SLACK

    degree = len(neighbors)
    decomposition_bound = len(outer) + (k - 1)
    decomposition_ok = degree <= decomposition_bound

    return CountingReport(
        center=center,
        scale=center_radius,
        interior_count=interior_count,
        interior_bound=k - 1,
        interior_ok=interior_ok,
        min_projected_separation=float(min_separation),
        separation_ok=separation_ok,
        degree=degree,
        decomposition_bound=decomposition_bound,
        decomposition_ok=decomposition_ok,
        passed=interior_ok and separation_ok and decomposition_ok,
    )
