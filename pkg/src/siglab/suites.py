"""Randomized self-verification of the whole stack.

Three layers: fixed instances with hand-derived answers, structural checks on
seeded random instances (radius oracle, edge rules, subgraph/monotonicity/
invariance relations, degree and edge bounds, coloring, witness counting), and
vectorized sweeps of the geometric inequalities.  The CLI verify command is a
thin wrapper around run_verify_suite.

``inject_fault`` threads a deliberate bug (strict instead of closed edge test)
through graph construction so the suite can demonstrate it catches one; the
tie-rich fixed instances make detection deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .generators import DISTRIBUTIONS, generate_points
from .lemmas import (
    SEPARATION_SLACK,
    bow_and_arrow_gaps,
    counting_check,
    project_ball2_many,
    sample_nonzero_pairs,
    sample_satellite_configs,
    satellite_separations,
)
from .norms import (
    POLYTOPE,
    NormSpec,
    lp_norm,
    norm_values,
    pairwise_distances,
    polytope_norm,
    weighted_lp_norm,
)
from .packing import euclidean_19_point_config, packing_bounds, validate_packing
from .sig import (
    InfluenceGraph,
    PointSet,
    build_aux_graph,
    build_ksig,
    degree_sequence,
    greedy_color,
    kth_radii,
    sort_by_radius,
    verify_bounds,
)

__all__ = [
    "GAP_TOL",
    "CheckResult",
    "SuiteReport",
    "Instance",
    "random_instances",
    "norm_family_samples",
    "satellite_norms",
    "brute_force_radii",
    "edges_from_rule",
    "bitwise_stable_norm",
    "radii_match_oracle",
    "edges_match_modulo_boundary",
    "run_verify_suite",
]

# absolute slack allowed below 0 for the bow-and-arrow gap
GAP_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            out.append(f"[{mark}] {c.name}: {c.detail}")
        out.append(f"{len(self.checks) - len(self.failures())}/{len(self.checks)} checks passed")
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


@dataclass(frozen=True, eq=False)
class Instance:
    label: str
    points: PointSet
    k: int
    norm: NormSpec


def _random_norm(rng: np.random.Generator, dim: int) -> NormSpec:
    labels = ["l1", "l2", "linf", "l3"] + (["poly"] if dim == 2 else [])
    pick = labels[int(rng.integers(len(labels)))]
    if pick == "l1":
        return lp_norm(1.0, dim)
    if pick == "l2":
        return lp_norm(2.0, dim)
    if pick == "linf":
        return lp_norm(math.inf, dim)
    if pick == "l3":
        return lp_norm(3.0, dim)
    functionals = np.vstack([np.eye(2), rng.uniform(-1.0, 1.0, size=(2, 2))])
    return polytope_norm(functionals)


def random_instances(
    count: int,
    seed: int = 0,
    max_points: int = 60,
    dims: tuple[int, ...] = (1, 2, 3, 4),
) -> list[Instance]:
    """Seeded instance mix covering every dimension, k in 1..5, all norm kinds."""
    rng = np.random.default_rng(seed)
    out: list[Instance] = []
    for idx in range(count):
        dim = int(dims[int(rng.integers(len(dims)))])
        k = int(rng.integers(1, 6))
        n = int(rng.integers(k + 1, max(k + 2, max_points + 1)))
        norm = _random_norm(rng, dim)
        distribution = DISTRIBUTIONS[int(rng.integers(len(DISTRIBUTIONS)))]
        points = generate_points(n, dim, distribution, seed=int(rng.integers(2**63)))
        label = f"{idx:03d}[d={dim} k={k} n={n} norm={norm.label()} {distribution}]"
        out.append(Instance(label=label, points=points, k=k, norm=norm))
    return out


def norm_family_samples() -> list[tuple[str, NormSpec]]:
    """One representative per norm family for the inequality sweeps."""
    return [
        ("lp1-d3", lp_norm(1.0, 3)),
        ("lp2-d3", lp_norm(2.0, 3)),
        ("lpinf-d3", lp_norm(math.inf, 3)),
        ("lp3-d2", lp_norm(3.0, 2)),
        ("wlp2-d3", weighted_lp_norm(2.0, (0.5, 1.0, 2.5))),
        ("poly-d2", polytope_norm([[1.0, 0.0], [0.0, 1.0], [0.6, 0.8]])),
    ]


def satellite_norms(dim: int) -> list[tuple[str, NormSpec]]:
    return [
        (f"l1-d{dim}", lp_norm(1.0, dim)),
        (f"l2-d{dim}", lp_norm(2.0, dim)),
        (f"linf-d{dim}", lp_norm(math.inf, dim)),
    ]


def brute_force_radii(points: PointSet, k: int, norm: NormSpec) -> list[float]:
    """Per-point k-th smallest distance via plain python sort; the radius oracle."""
    pts = points.points
    out = []
    for i in range(len(pts)):
        dists = sorted(
            float(norm_values(norm, pts[j] - pts[i])) for j in range(len(pts)) if j != i
        )
        out.append(dists[k - 1])
    return out


def edges_from_rule(points: PointSet, radii, norm: NormSpec) -> set[tuple[int, int]]:
    """Direct pairwise re-derivation of the closed edge rule."""
    pts = points.points
    r = radii.radii
    edges = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if float(norm_values(norm, pts[i] - pts[j])) <= r[i] + r[j]:
                edges.add((i, j))
    return edges


def bitwise_stable_norm(norm: NormSpec) -> bool:
    """True when evaluation uses only correctly-rounded primitives.

    Addition, multiplication, sqrt, abs, and max give the same bits no matter
    how numpy batches them; pow with a general exponent does not, so lp values
    for p outside {1, 2, inf} may drift a final ulp with the array shape.
    """
    return norm.kind == POLYTOPE or norm.p in (1.0, 2.0, math.inf)


def radii_match_oracle(radii, brute: list[float], norm: NormSpec) -> bool:
    """Computed radii against the brute-force oracle; bit-exact where possible."""
    values = radii.radii.tolist()
    if bitwise_stable_norm(norm):
        return values == brute
    return all(math.isclose(a, b, rel_tol=1e-12) for a, b in zip(values, brute))


def edges_match_modulo_boundary(points, radii, norm, reference, transformed) -> bool:
    """Edge sets equal except possibly at closed-ball boundary ties.

    A pair with ||c_i - c_j|| exactly r_i + r_j sits on the non-strict
    threshold; re-rounding after a translation or scaling can move it one ulp
    to either side, so such pairs may differ.  Any other difference is a real
    violation.
    """
    flipped = reference.edges ^ transformed.edges
    if not flipped:
        return True
    dmat = pairwise_distances(norm, points.points)
    r = radii.radii
    for i, j in flipped:
        margin = abs(float(dmat[i, j]) - (float(r[i]) + float(r[j])))
        if margin > 1e-9 * max(float(dmat[i, j]), 1.0):
            return False
    return True


def _category(name: str, failures: list[str], total: int) -> CheckResult:
    if failures:
        return CheckResult(name, False, f"{len(failures)}/{total} failed; first: {failures[0]}")
    return CheckResult(name, True, f"{total} cases ok")


def _known_answer_check(inject_fault: bool) -> CheckResult:
    failures: list[str] = []
    total = 0

    def expect(label: str, got, want):
        nonlocal total
        total += 1
        if got != want:
            failures.append(f"{label}: got {got!r}, want {want!r}")

    norm1 = lp_norm(2.0, 1)
    line = PointSet(points=np.array([[0.0], [1.0], [3.0], [7.0]]))
    r1 = kth_radii(line, 1, norm1)
    expect("line k=1 radii", r1.radii.tolist(), [1.0, 1.0, 2.0, 4.0])
    g1 = build_ksig(line, r1, norm1, strict=inject_fault)
    expect("line k=1 edges", g1.edges, frozenset({(0, 1), (0, 2), (1, 2), (2, 3)}))
    expect("line k=1 degrees", degree_sequence(g1), [2, 2, 3, 1])
    expect("line k=1 aux edges", build_aux_graph(line, r1, norm1).edges, frozenset())
    expect("line k=1 bound", verify_bounds(g1, r1, 1).passed, True)
    r2 = kth_radii(line, 2, norm1)
    expect("line k=2 radii", r2.radii.tolist(), [3.0, 2.0, 3.0, 6.0])

    tri = PointSet(points=np.array([[0.0], [1.0], [3.0]]))
    rt = kth_radii(tri, 2, norm1)
    expect("triple k=2 radii", rt.radii.tolist(), [3.0, 2.0, 3.0])
    ht = build_aux_graph(tri, rt, norm1)
    expect("triple k=2 aux edges", ht.edges, frozenset({(0, 1), (1, 2)}))
    order = sort_by_radius(rt)
    expect("triple k=2 order", order, [1, 0, 2])
    coloring = greedy_color(ht, order)
    expect("triple k=2 colors", coloring.colors, (2, 1, 2))
    expect("triple k=2 color count", coloring.num_colors, 2)

    pair = PointSet(points=np.array([[0.0], [2.5]]))
    rp = kth_radii(pair, 1, norm1)
    expect("pair radii", rp.radii.tolist(), [2.5, 2.5])
    expect("pair edges", build_ksig(pair, rp, norm1, strict=inject_fault).edges, frozenset({(0, 1)}))

    norm2 = lp_norm(2.0, 2)
    twins = PointSet(points=np.array([[0.0, 0.0], [0.0, 0.0], [5.0, 5.0]]))
    rw = kth_radii(twins, 1, norm2)
    far = float(norm_values(norm2, np.array([5.0, 5.0])))
    expect("twins radii", rw.radii.tolist(), [0.0, 0.0, far])
    expect(
        "twins edges",
        build_ksig(twins, rw, norm2, strict=inject_fault).edges,
        frozenset({(0, 1), (0, 2), (1, 2)}),
    )

    # integer simplex under the max norm: every pairwise distance is exactly 1
    norminf = lp_norm(math.inf, 2)
    simplex = PointSet(points=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    rs = kth_radii(simplex, 1, norminf)
    expect("simplex radii", rs.radii.tolist(), [1.0, 1.0, 1.0])
    expect("simplex aux edges", build_aux_graph(simplex, rs, norminf).edges, frozenset())
    expect(
        "simplex edges",
        build_ksig(simplex, rs, norminf, strict=inject_fault).edges,
        frozenset({(0, 1), (0, 2), (1, 2)}),
    )

    path = InfluenceGraph(n=3, edges=frozenset({(0, 1), (1, 2)}))
    expect("path greedy colors", greedy_color(path, [1, 0, 2]).colors, (2, 1, 2))

    return _category("known-answers", failures, total)


def _packing_check(seed: int) -> CheckResult:
    failures: list[str] = []
    total = 4
    line = packing_bounds(lp_norm(2.0, 1), seed=seed, restarts=2, candidates=1000)
    if (line.lower, line.upper) != (5, 5) or not validate_packing(line.witness).ok:
        failures.append(f"d=1 bounds ({line.lower}, {line.upper}) != (5, 5) or witness invalid")
    grid = packing_bounds(lp_norm(math.inf, 2), seed=seed, restarts=2, candidates=1000)
    if (grid.lower, grid.upper) != (25, 25) or not validate_packing(grid.witness).ok:
        failures.append(f"d=2 max-norm bounds ({grid.lower}, {grid.upper}) != (25, 25)")
    disk = packing_bounds(lp_norm(2.0, 2), seed=seed, restarts=2, candidates=2000)
    if disk.lower < 13 or disk.lower > disk.upper or not validate_packing(disk.witness).ok:
        failures.append(f"d=2 euclidean lower {disk.lower} outside [13, {disk.upper}]")
    ring = euclidean_19_point_config()
    report = validate_packing(ring)
    if not report.ok or len(ring) != 19:
        failures.append(f"19-point construction rejected: {report.violations[:1]}")
    return _category("packing-bounds", failures, total)


def _norm_axiom_check(seed: int, samples: int = 5000) -> CheckResult:
    failures: list[str] = []
    total = 0
    rng = np.random.default_rng([seed, 7])
    for label, norm in norm_family_samples():
        total += 1
        X = rng.uniform(-3.0, 3.0, size=(samples, norm.dim))
        Y = rng.uniform(-3.0, 3.0, size=(samples, norm.dim))
        t = rng.uniform(-4.0, 4.0, size=samples)
        nx, ny = norm_values(norm, X), norm_values(norm, Y)
        triangle = norm_values(norm, X + Y) - (nx + ny)
        if float(triangle.max()) > 1e-9 * float((nx + ny).max()):
            failures.append(f"{label}: triangle inequality violated")
            continue
        homo = np.abs(norm_values(norm, X * t[:, None]) - np.abs(t) * nx)
        if float(homo.max()) > 1e-12 * max(1.0, float((np.abs(t) * nx).max())):
            failures.append(f"{label}: homogeneity violated")
            continue
        if not np.array_equal(norm_values(norm, -X), nx):
            failures.append(f"{label}: symmetry violated")
            continue
        if float(norm_values(norm, np.zeros(norm.dim))) != 0.0:
            failures.append(f"{label}: zero vector has nonzero norm")
    return _category("norm-axioms", failures, total)


def _lemma_checks(seed: int, gap_samples: int, satellite_samples: int) -> list[CheckResult]:
    checks: list[CheckResult] = []

    failures: list[str] = []
    families = norm_family_samples()
    for i, (label, norm) in enumerate(families):
        A, B = sample_nonzero_pairs(norm, gap_samples, seed=seed * 1000 + i)
        worst = float(bow_and_arrow_gaps(norm, A, B).min())
        if worst < -GAP_TOL:
            failures.append(f"{label}: min gap {worst:.3e}")
    checks.append(_category("bow-and-arrow", failures, len(families)))

    failures = []
    total = 0
    for dim in (1, 2, 3):
        for label, norm in satellite_norms(dim):
            total += 1
            configs = sample_satellite_configs(norm, satellite_samples, seed=seed * 100 + dim)
            worst = float(satellite_separations(norm, configs).min())
            if worst < 1.0 - SEPARATION_SLACK:
                failures.append(f"{label}: min separation {worst:.12f}")
    checks.append(_category("satellite-separation", failures, total))

    failures = []
    total = 0
    rng = np.random.default_rng([seed, 11])
    for label, norm in norm_family_samples():
        total += 1
        X = rng.uniform(-6.0, 6.0, size=(2000, norm.dim))
        P = project_ball2_many(norm, X)
        if float(norm_values(norm, P).max()) > 2.0 + 1e-12:
            failures.append(f"{label}: retraction leaves the ball")
            continue
        if float(np.abs(P - project_ball2_many(norm, P)).max()) > 1e-12:
            failures.append(f"{label}: retraction is not idempotent")
            continue
        inside = norm_values(norm, X) <= 2.0
        if not np.array_equal(P[inside], X[inside]):
            failures.append(f"{label}: retraction moves interior points")
    checks.append(_category("retraction", failures, total))
    return checks


def run_verify_suite(
    seed: int = 0,
    instances: int = 40,
    max_points: int = 60,
    include_lemmas: bool = False,
    inject_fault: bool = False,
    oracle_instances: int = 12,
    counting_instances: int = 10,
    invariance_instances: int = 12,
    gap_samples: int = 10_000,
    satellite_samples: int = 1_000,
) -> SuiteReport:
    """Run every check layer; the report lists one result per category."""
    checks: list[CheckResult] = [_known_answer_check(inject_fault)]

    insts = random_instances(instances, seed, max_points)
    shift_rng = np.random.default_rng([seed, 3])

    oracle_fail: list[str] = []
    rule_fail: list[str] = []
    subgraph_fail: list[str] = []
    degree_fail: list[str] = []
    edge_fail: list[str] = []
    color_fail: list[str] = []
    mono_fail: list[str] = []
    inv_fail: list[str] = []
    det_fail: list[str] = []
    count_fail: list[str] = []
    mono_total = inv_total = count_total = 0

    for idx, inst in enumerate(insts):
        points, k, norm = inst.points, inst.k, inst.norm
        radii = kth_radii(points, k, norm)
        graph = build_ksig(points, radii, norm, strict=inject_fault)
        aux = build_aux_graph(points, radii, norm)
        order = sort_by_radius(radii)
        coloring = greedy_color(aux, order)
        report = verify_bounds(graph, radii, points.dim)

        if idx < oracle_instances:
            if not radii_match_oracle(radii, brute_force_radii(points, k, norm), norm):
                oracle_fail.append(inst.label)
            if graph.edges != frozenset(edges_from_rule(points, radii, norm)):
                rule_fail.append(inst.label)
        if not inject_fault and not aux.edges <= graph.edges:
            subgraph_fail.append(inst.label)
        if not report.passed:
            degree_fail.append(f"{inst.label}: witnesses {report.witness_vertices}")
        if not report.edge_bound_ok:
            edge_fail.append(f"{inst.label}: {report.edge_count} > {report.edge_bound}")
        if coloring.num_colors > k:
            color_fail.append(f"{inst.label}: {coloring.num_colors} colors")

        if len(points) >= k + 2:
            mono_total += 1
            next_radii = kth_radii(points, k + 1, norm)
            next_graph = build_ksig(points, next_radii, norm, strict=inject_fault)
            if not graph.edges <= next_graph.edges:
                mono_fail.append(inst.label)

        if idx < invariance_instances:
            inv_total += 1
            shift = shift_rng.uniform(-5.0, 5.0, size=points.dim)
            # doubling commutes with correct rounding, so for those norms the
            # edge set must match bitwise; elsewhere, and for the shifted and
            # oddly-scaled copies, differences are only allowed at boundary ties
            doubled = PointSet(points=points.points * 2.0)
            doubled_graph = build_ksig(
                doubled, kth_radii(doubled, k, norm), norm, strict=inject_fault
            )
            if bitwise_stable_norm(norm):
                ok = doubled_graph.edges == graph.edges
            else:
                ok = edges_match_modulo_boundary(points, radii, norm, graph, doubled_graph)
            for factor_pts in (points.points + shift, points.points * 1.75):
                other = PointSet(points=factor_pts)
                other_graph = build_ksig(other, kth_radii(other, k, norm), norm, strict=inject_fault)
                ok = ok and edges_match_modulo_boundary(points, radii, norm, graph, other_graph)
            if not ok:
                inv_fail.append(inst.label)

        again = build_ksig(points, kth_radii(points, k, norm), norm, strict=inject_fault)
        if again.edges != graph.edges:
            det_fail.append(inst.label)

        if idx < counting_instances and all(radii.radii[w] > 0.0 for w in order[:2]):
            count_total += 1
            for witness in order[:2]:
                audit = counting_check(points, radii, graph, coloring, witness, norm)
                if not audit.passed:
                    count_fail.append(f"{inst.label} witness {witness}")
                    break

    oracle_total = min(oracle_instances, len(insts))
    checks.append(_category("radius-oracle", oracle_fail, oracle_total))
    checks.append(_category("edge-rule", rule_fail, oracle_total))
    checks.append(_category("aux-subgraph", subgraph_fail, len(insts)))
    checks.append(_category("degree-bound", degree_fail, len(insts)))
    checks.append(_category("edge-count-bound", edge_fail, len(insts)))
    checks.append(_category("coloring", color_fail, len(insts)))
    checks.append(_category("k-monotonicity", mono_fail, mono_total))
    checks.append(_category("invariance", inv_fail, inv_total))
    checks.append(_category("determinism", det_fail, len(insts)))
    checks.append(_category("witness-counting", count_fail, count_total))
    checks.append(_packing_check(seed))
    checks.append(_norm_axiom_check(seed))
    if include_lemmas:
        checks.extend(_lemma_checks(seed, gap_samples, satellite_samples))
    return SuiteReport(checks=tuple(checks))
