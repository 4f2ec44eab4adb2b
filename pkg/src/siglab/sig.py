"""k-th closed sphere-of-influence graphs and their structural checks.

Each point receives the radius of its k-th nearest other point; the influence
graph joins two points whenever their closed balls meet (distance <= sum of
radii).  The companion graph joins points at distance strictly below the larger
of the two radii; coloring it greedily in radius order needs at most k colors,
which drives the degree-bound verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .norms import NormSpec, pairwise_distances
from .packing import packing_upper_bound

__all__ = [
    "PointSet",
    "RadiusAssignment",
    "InfluenceGraph",
    "Coloring",
    "VerificationReport",
    "PipelineResult",
    "kth_radii",
    "build_ksig",
    "build_aux_graph",
    "sort_by_radius",
    "greedy_color",
    "degree_sequence",
    "verify_bounds",
    "ksig_pipeline",
]


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered family of m >= 2 points in R^dim.  Duplicates are allowed."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError(f"points must form an (m, dim) array, got shape {pts.shape}")
        if pts.shape[0] < 2:
            raise ValueError(f"a point set needs at least 2 points, got {pts.shape[0]}")
        if pts.shape[1] < 1:
            raise ValueError("points must have at least one coordinate")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, eq=False)
class RadiusAssignment:
    """Influence radii for a fixed k: radii[i] is the k-th smallest distance from point i."""

    k: int
    radii: np.ndarray

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        r = np.asarray(self.radii, dtype=np.float64)
        r.setflags(write=False)
        object.__setattr__(self, "radii", r)

    def __len__(self) -> int:
        return len(self.radii)


@dataclass(frozen=True)
class InfluenceGraph:
    """Undirected simple graph on point indices; edges stored as (i, j) with i < j."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge ({i}, {j}) for a graph on {self.n} vertices")

    @classmethod
    def from_adjacency(cls, adjacency: np.ndarray) -> "InfluenceGraph":
        n = adjacency.shape[0]
        iu, ju = np.nonzero(np.triu(adjacency, k=1))
        return cls(n, frozenset(zip(iu.tolist(), ju.tolist())))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj


@dataclass(frozen=True)
class Coloring:
    """A proper vertex coloring; colors are positive integers."""

    colors: tuple[int, ...]
    num_colors: int


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the degree- and edge-bound checks on one influence graph.

    ``bound`` is 5^dim * k; ``passed`` says the two smallest-radius vertices
    (and hence at least two vertices) have degree strictly below it.  The edge
    count is compared against (5^dim * k - 1) * n separately.
    """

    degree_sequence: tuple[int, ...]
    witness_vertices: tuple[int, int]
    bound: int
    passed: bool
    edge_bound: int
    edge_count: int

    @property
    def edge_bound_ok(self) -> bool:
        return self.edge_count <= self.edge_bound


class PipelineResult(NamedTuple):
    radii: RadiusAssignment
    graph: InfluenceGraph
    report: VerificationReport


def _distance_matrix(points: PointSet, norm: NormSpec) -> np.ndarray:
    if norm.dim != points.dim:
        raise ValueError(f"dimension mismatch: points have dim {points.dim}, norm expects {norm.dim}")
    return pairwise_distances(norm, points.points)


def kth_radii(points: PointSet, k: int, norm: NormSpec) -> RadiusAssignment:
    """Radius of each point = its k-th smallest distance to another point (with multiplicity)."""
    m = len(points)
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if m <= k:
        raise ValueError(f"insufficient points for k={k}: need at least {k + 1}, got {m}")
    dmat = _distance_matrix(points, norm)
    np.fill_diagonal(dmat, np.inf)
    radii = np.sort(dmat, axis=1)[:, k - 1]
    return RadiusAssignment(k=k, radii=radii)


def _check_lengths(points: PointSet, radii: RadiusAssignment):
    if len(points) != len(radii):
        raise ValueError(f"length mismatch: {len(points)} points vs {len(radii)} radii")


def build_ksig(
    points: PointSet,
    radii: RadiusAssignment,
    norm: NormSpec,
    tol: float = 0.0,
    strict: bool = False,
) -> InfluenceGraph:
    """Join i and j whenever ||c_i - c_j|| <= r_i + r_j (closed balls meeting).

    ``tol`` widens the test to <= r_i + r_j + tol for noisy inputs (default 0,
    the exact rule).  ``strict`` flips <= to < and exists solely as the fault
    hook for the verification suite's self-test; leave it False.
    """
    _check_lengths(points, radii)
    dmat = _distance_matrix(points, norm)
    thresholds = radii.radii[:, None] + radii.radii[None, :] + tol
    adjacency = (dmat < thresholds) if strict else (dmat <= thresholds)
    np.fill_diagonal(adjacency, False)
    return InfluenceGraph.from_adjacency(adjacency)


def build_aux_graph(
    points: PointSet,
    radii: RadiusAssignment,
    norm: NormSpec,
    tol: float = 0.0,
) -> InfluenceGraph:
    """Join i and j whenever ||c_i - c_j|| < max(r_i, r_j) (strict).

    Always a subgraph of the closed influence graph for the same radii.  An
    independent set here has no point interior to another member's ball.
    """
    _check_lengths(points, radii)
    dmat = _distance_matrix(points, norm)
    thresholds = np.maximum(radii.radii[:, None], radii.radii[None, :]) + tol
    adjacency = dmat < thresholds
    np.fill_diagonal(adjacency, False)
    return InfluenceGraph.from_adjacency(adjacency)


def sort_by_radius(radii: RadiusAssignment) -> list[int]:
    """Vertex indices by nondecreasing radius; ties keep original index order."""
    return np.argsort(radii.radii, kind="stable").tolist()


def greedy_color(graph: InfluenceGraph, order: Sequence[int]) -> Coloring:
    """Color vertices in the given order, each getting the smallest color absent
    among its already-colored neighbors.

    In radius order on the aux graph for parameter k this uses at most k colors:
    each vertex has fewer than k earlier neighbors, because fewer than k points
    lie strictly inside its own influence ball.
    """
    if sorted(order) != list(range(graph.n)):
        raise ValueError("order is not a permutation of the graph's vertices")
    adjacency = graph.adjacency_lists()
    colors = [0] * graph.n
    for v in order:
        taken = {colors[u] for u in adjacency[v] if colors[u] > 0}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring(colors=tuple(colors), num_colors=max(colors, default=0))


def degree_sequence(graph: InfluenceGraph) -> list[int]:
    degrees = [0] * graph.n
    for i, j in graph.edges:
        degrees[i] += 1
        degrees[j] += 1
    return degrees


def verify_bounds(
    graph: InfluenceGraph,
    radii: RadiusAssignment,
    dim: int,
    k: int | None = None,
) -> VerificationReport:
    """Check the minimum-degree and edge-count bounds on a built influence graph.

    The two vertices of smallest radius (stable order) are the witnesses; both
    must have degree < 5^dim * k.  Report-style: never raises on a violation.
    """
    if k is None:
        k = radii.k
    if graph.n != len(radii):
        raise ValueError(f"graph has {graph.n} vertices but {len(radii)} radii given")
    degrees = degree_sequence(graph)
    cap = packing_upper_bound(dim) * k
    order = sort_by_radius(radii)
    witnesses = (order[0], order[1])
    below = sum(1 for g in degrees if g < cap)
    passed = degrees[witnesses[0]] < cap and degrees[witnesses[1]] < cap and below >= 2
    return VerificationReport(
        degree_sequence=tuple(degrees),
        witness_vertices=witnesses,
        bound=cap,
        passed=passed,
        edge_bound=(cap - 1) * graph.n,
        edge_count=len(graph.edges),
    )


def ksig_pipeline(points: PointSet, k: int, norm: NormSpec, tol: float = 0.0) -> PipelineResult:
    """kth_radii -> build_ksig -> verify_bounds, deterministically."""
    radii = kth_radii(points, k, norm)
    graph = build_ksig(points, radii, norm, tol=tol)
    report = verify_bounds(graph, radii, points.dim, k)
    return PipelineResult(radii=radii, graph=graph, report=report)
