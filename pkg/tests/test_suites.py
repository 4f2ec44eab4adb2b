"""Tests for the randomized verification suites themselves."""

import json
import math

import numpy as np
import pytest

from siglab.norms import lp_norm
from siglab.sig import PointSet, RadiusAssignment, build_ksig, kth_radii
from siglab.suites import (
    bitwise_stable_norm,
    edges_match_modulo_boundary,
    norm_family_samples,
    radii_match_oracle,
    random_instances,
    run_verify_suite,
)

EXPECTED_CATEGORIES = {
    "known-answers",
    "radius-oracle",
    "edge-rule",
    "aux-subgraph",
    "degree-bound",
    "edge-count-bound",
    "coloring",
    "k-monotonicity",
    "invariance",
    "determinism",
    "witness-counting",
    "packing-bounds",
    "norm-axioms",
    "bow-and-arrow",
    "satellite-separation",
    "retraction",
}


class TestInstanceGeneration:
    def test_count_and_ranges(self):
        instances = random_instances(30, seed=1, max_points=50)
        assert len(instances) == 30
        for inst in instances:
            assert 1 <= inst.k <= 5
            assert inst.k + 1 <= len(inst.points) <= 50
            assert inst.points.dim in (1, 2, 3, 4)
            assert inst.norm.dim == inst.points.dim

    def test_same_seed_same_instances(self):
        a = random_instances(10, seed=7)
        b = random_instances(10, seed=7)
        for x, y in zip(a, b):
            assert x.label == y.label
            assert np.array_equal(x.points.points, y.points.points)

    def test_labels_are_unique(self):
        labels = [inst.label for inst in random_instances(40, seed=2)]
        assert len(set(labels)) == 40


class TestComparators:
    def test_stability_classification(self):
        assert bitwise_stable_norm(lp_norm(1.0, 2))
        assert bitwise_stable_norm(lp_norm(2.0, 3))
        assert bitwise_stable_norm(lp_norm(math.inf, 4))
        assert not bitwise_stable_norm(lp_norm(3.0, 2))

    def test_oracle_comparison_is_exact_for_stable_norms(self):
        norm = lp_norm(2.0, 1)
        radii = RadiusAssignment(1, np.array([1.0, 1.0]))
        assert radii_match_oracle(radii, [1.0, 1.0], norm)
        assert not radii_match_oracle(radii, [1.0, 1.0 + 2**-52], norm)

    def test_oracle_comparison_tolerates_pow_jitter(self):
        norm = lp_norm(3.0, 1)
        radii = RadiusAssignment(1, np.array([1.0]))
        assert radii_match_oracle(radii, [1.0 + 2**-52], norm)
        assert not radii_match_oracle(radii, [1.0 + 1e-9], norm)

    def test_edge_comparison_allows_boundary_flips_only(self):
        # |0 - 3| == r_0 + r_2 exactly: dropping that edge is a boundary flip,
        # dropping (0, 1) is not
        norm = lp_norm(2.0, 1)
        ps = PointSet(np.array([[0.0], [1.0], [3.0]]))
        radii = kth_radii(ps, 1, norm)
        reference = build_ksig(ps, radii, norm)
        tied = build_ksig(ps, radii, norm, strict=True)
        assert edges_match_modulo_boundary(ps, radii, norm, reference, tied)
        broken = frozenset(reference.edges - {(0, 1)})
        from siglab.sig import InfluenceGraph

        assert not edges_match_modulo_boundary(
            ps, radii, norm, reference, InfluenceGraph(3, broken)
        )

    def test_norm_family_labels(self):
        labels = [label for label, _ in norm_family_samples()]
        assert labels == ["lp1-d3", "lp2-d3", "lpinf-d3", "lp3-d2", "wlp2-d3", "poly-d2"]


class TestVerifySuite:
    def test_all_categories_pass(self):
        report = run_verify_suite(seed=0, instances=12, include_lemmas=True,
                                  gap_samples=2000, satellite_samples=200)
        assert report.passed
        assert {c.name for c in report.checks} == EXPECTED_CATEGORIES
        assert report.failures() == []

    def test_lines_and_dict_round_trip(self):
        report = run_verify_suite(seed=1, instances=6)
        lines = report.lines()
        assert lines[-1].endswith("checks passed")
        assert all(line.startswith("[PASS]") for line in lines[:-1])
        payload = json.loads(json.dumps(report.to_dict()))
        assert payload["passed"] is True
        assert len(payload["checks"]) == len(report.checks)

    def test_broken_edge_rule_is_caught(self):
        report = run_verify_suite(seed=0, instances=12, inject_fault=True)
        assert not report.passed
        names = [c.name for c in report.failures()]
        assert "known-answers" in names

    def test_seed_sweep(self):
        for seed in range(3):
            assert run_verify_suite(seed=seed, instances=8).passed
