"""k-th closed sphere-of-influence graphs over arbitrary norms.

Each point of a finite set receives a closed ball whose radius is the distance
to its k-th nearest other point; the graph joins points whose balls intersect.
The library builds these graphs for lp, weighted lp, and symmetric polytope
norms, and machine-checks the structural guarantees that come with them: at
least two vertices of degree below 5^d * k, at most (5^d * k - 1) * n edges,
a k-colorable auxiliary graph, and the projection-separation inequalities the
degree bound rests on.  The packing module certifies lower bounds for the
constant those guarantees cap at 5^d.
"""

from .generators import DISTRIBUTIONS, generate_points
from .io import export_graph, graph_to_dot, parse_points, read_graph_json, write_points
from .lemmas import (
    SEPARATION_SLACK,
    CountingReport,
    SatelliteConfig,
    bow_and_arrow_gap,
    bow_and_arrow_gaps,
    counting_check,
    project_ball2,
    project_ball2_many,
    sample_nonzero_pairs,
    sample_satellite_configs,
    satellite_hypotheses,
    satellite_separation,
    satellite_separations,
)
from .norms import (
    NormSpec,
    NormValidity,
    ball_box_halfwidths,
    evaluate_norm,
    lp_norm,
    norm_values,
    pairwise_distances,
    parse_norm,
    polytope_norm,
    unit_vector,
    validate_norm_spec,
    weighted_lp_norm,
)
from .packing import (
    PackingBounds,
    PackingConfig,
    PackingValidity,
    euclidean_19_point_config,
    greedy_pack,
    packing_bounds,
    packing_upper_bound,
    validate_packing,
)
from .sig import (
    Coloring,
    InfluenceGraph,
    PipelineResult,
    PointSet,
    RadiusAssignment,
    VerificationReport,
    build_aux_graph,
    build_ksig,
    degree_sequence,
    greedy_color,
    ksig_pipeline,
    kth_radii,
    sort_by_radius,
    verify_bounds,
)
from .suites import (
    CheckResult,
    Instance,
    SuiteReport,
    random_instances,
    run_verify_suite,
)

__version__ = "0.1.0"
