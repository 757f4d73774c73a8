"""Euclidean degree-bounded spanning tree heuristics, approximations and oracles."""

from .geometry import check_points, distance, distance_matrix
from .tree import (
    EdgeSwap,
    SpanningTree,
    bottleneck,
    edge_lengths,
    feasibility_error,
    total_weight,
    tree_from_path,
)
from .mst import (
    MstResult,
    exact_dmst,
    exact_hampath,
    minimum_spanning_tree,
)
from .generate import (
    GenConfig,
    GenerationError,
    Instance,
    StarSpec,
    allowable_range,
    filter_degree4,
    generate_special,
    generate_star,
    generate_uniform,
    read_instance,
    read_instances,
    write_instance,
)
from .swaps import (
    apply_swap,
    bicriteria_search,
    feasibility_search,
    feasibility_weight_search,
    locking_search,
    neighbourhood,
    run_edge_swap_search,
)
from .construct import (
    MhcParams,
    bounded_prim,
    multistart_hillclimb,
    mutate_chromosome,
    random_chromosome,
    steered_prim,
)
from .restructure import chan_tree, khuller_tree
from .hampath import (
    christofides_path,
    cube_path,
    double_tree_path,
    euler_trail,
    min_weight_perfect_matching,
    shortcut,
)
from .estimators import (
    BoundedPrim,
    ChanTree,
    EdgeSwapSearch,
    HamiltonianPathHeuristic,
    KhullerTree,
    MinimumSpanningTreeEstimator,
    MultistartHillclimb,
)
from .bench import (
    ALGORITHMS,
    AggregateRow,
    RunRecord,
    aggregate,
    algorithms_for_delta,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AggregateRow",
    "BoundedPrim",
    "ChanTree",
    "EdgeSwap",
    "EdgeSwapSearch",
    "GenConfig",
    "GenerationError",
    "HamiltonianPathHeuristic",
    "Instance",
    "KhullerTree",
    "MhcParams",
    "MinimumSpanningTreeEstimator",
    "MstResult",
    "MultistartHillclimb",
    "RunRecord",
    "SpanningTree",
    "StarSpec",
    "aggregate",
    "algorithms_for_delta",
    "allowable_range",
    "apply_swap",
    "bicriteria_search",
    "bottleneck",
    "bounded_prim",
    "chan_tree",
    "check_points",
    "christofides_path",
    "cube_path",
    "distance",
    "distance_matrix",
    "double_tree_path",
    "edge_lengths",
    "euler_trail",
    "exact_dmst",
    "exact_hampath",
    "feasibility_error",
    "feasibility_search",
    "feasibility_weight_search",
    "filter_degree4",
    "generate_special",
    "generate_star",
    "generate_uniform",
    "khuller_tree",
    "locking_search",
    "min_weight_perfect_matching",
    "minimum_spanning_tree",
    "multistart_hillclimb",
    "mutate_chromosome",
    "neighbourhood",
    "random_chromosome",
    "read_instance",
    "read_instances",
    "run_edge_swap_search",
    "run_suite",
    "shortcut",
    "steered_prim",
    "total_weight",
    "tree_from_path",
    "write_instance",
]
