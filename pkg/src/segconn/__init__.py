"""Best-case connectivity with uncertainty regions given as line segments.

Given fixed points and k segments, decide for a threshold delta whether
one point per segment can be chosen so that the graph connecting all
pairs at distance <= delta is connected, and compute the minimum such
delta (bisection or parametric search), with a brute-force grid oracle
for verification.
"""

from .decision import (
    DecisionResult,
    Instance,
    Preprocessing,
    decide,
    decide_full,
    decide_zero,
    extract_witness,
    preprocess,
    threshold_graph_connected,
)
from .emst import Mst, compute_emst, split_components
from .geometry import ParamSegment, Point, Segmentation, VoronoiOnSegment, voronoi_on_segment
from .instance_io import (
    InstanceFormatError,
    generate_instance,
    load_instance,
    parse_instance,
    serialize_instance,
)
from .oracle import OracleResult, mbst_bottleneck, oracle_delta_star
from .solver import SolveResult, solve_bisect, solve_parametric
from .topology import TopologyTree, decompose_significant, enumerate_topology_trees

__version__ = "0.1.0"

__all__ = [
    "DecisionResult",
    "Instance",
    "InstanceFormatError",
    "Mst",
    "OracleResult",
    "ParamSegment",
    "Point",
    "Preprocessing",
    "Segmentation",
    "SolveResult",
    "TopologyTree",
    "VoronoiOnSegment",
    "compute_emst",
    "decide",
    "decide_full",
    "decide_zero",
    "decompose_significant",
    "enumerate_topology_trees",
    "extract_witness",
    "generate_instance",
    "load_instance",
    "mbst_bottleneck",
    "oracle_delta_star",
    "parse_instance",
    "preprocess",
    "serialize_instance",
    "solve_bisect",
    "solve_parametric",
    "split_components",
    "threshold_graph_connected",
    "voronoi_on_segment",
]
