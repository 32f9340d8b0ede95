"""Greedy graph spanners, weighted girth, and safe-path certifiers."""

from .bench import ExperimentConfig, TradeoffRow, rows_to_csv, run_tradeoff, stretch_parameter
from .generators import generate
from .girth import (
    INFINITE,
    CycleWitness,
    certify_greedy_girth,
    check_max_weight_bound,
    lightness,
    normalized_cycle_weight,
    unweighted_girth,
    weighted_girth,
)
from .graph import (
    EdgeKey,
    WeightedGraph,
    build_graph,
    minimum_spanning_tree,
    parse_graph,
    parse_rational,
    serialize_graph,
    shortest_path_distance,
)
from .hikers import HikerJourney, hiker_protocol_full, hiker_protocol_warmup
from .lemmas import (
    check_bucket_monotone_dispersion,
    check_monotone_dispersion,
    check_unweighted_dispersion,
    check_weak_counting,
    main_theorem_report,
    monte_carlo_full_counting,
    moore_bound_report,
    run_medium_counting,
)
from .paths import (
    Bucket,
    Step,
    bucketize,
    classify_path,
    dump_path,
    enumerate_edge_simple_k_paths,
    enumerate_safe_k_paths,
)
from .report import LemmaReport
from .spancycle import (
    ReductionTrace,
    SpanningCycleGraph,
    build_spanning_cycle_graph,
    full_reduction,
    normalize_unit_mst,
    parse_scg,
    serialize_scg,
    to_spanning_cycle,
)
from .spanner import SpannerResult, greedy_spanner, verify_stretch

__all__ = [
    "Bucket",
    "CycleWitness",
    "EdgeKey",
    "ExperimentConfig",
    "HikerJourney",
    "INFINITE",
    "LemmaReport",
    "ReductionTrace",
    "SpannerResult",
    "SpanningCycleGraph",
    "Step",
    "TradeoffRow",
    "WeightedGraph",
    "bucketize",
    "build_graph",
    "build_spanning_cycle_graph",
    "certify_greedy_girth",
    "check_bucket_monotone_dispersion",
    "check_max_weight_bound",
    "check_monotone_dispersion",
    "check_unweighted_dispersion",
    "check_weak_counting",
    "classify_path",
    "dump_path",
    "enumerate_edge_simple_k_paths",
    "enumerate_safe_k_paths",
    "full_reduction",
    "generate",
    "greedy_spanner",
    "hiker_protocol_full",
    "hiker_protocol_warmup",
    "lightness",
    "main_theorem_report",
    "minimum_spanning_tree",
    "monte_carlo_full_counting",
    "moore_bound_report",
    "normalize_unit_mst",
    "normalized_cycle_weight",
    "parse_graph",
    "parse_rational",
    "parse_scg",
    "rows_to_csv",
    "run_medium_counting",
    "run_tradeoff",
    "serialize_graph",
    "serialize_scg",
    "shortest_path_distance",
    "stretch_parameter",
    "to_spanning_cycle",
    "unweighted_girth",
    "verify_stretch",
    "weighted_girth",
]
