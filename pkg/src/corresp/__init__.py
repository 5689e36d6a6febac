"""Many-to-many correspondences between two partitions of the same weighted set."""

from .basis import (
    BasisCut,
    BipartiteGraph,
    CutBasis,
    all_pairs_min_cut,
    bipartite_basis,
    crossing_pairs,
    cut_basis,
    dissimilarity_report,
    min_st_cut_graph,
    total_dissimilarity,
)
from .bounds import SideDistributions, bound_b, bound_tightened
from .objective import (
    Correspondence,
    is_mutual,
    mutual_partner,
    nontrivial_partner,
    optimal_partner,
    peak,
    phi,
    phi_min,
    phi_star,
    phi_star_constrained,
)
from .io import emit_dot, parse_partition_file, write_partition_file
from .partition import (
    ContingencyTable,
    DataError,
    GroundSet,
    Partition,
    PartSet,
    build_contingency,
    build_partition,
    intersect_ground,
    partition_from_labels,
)
from .solvers import (
    Constraint,
    MinCutResult,
    SolverConfig,
    SolverState,
    Status,
    bnb_min_st_cut,
    brute_force_min_st_cut,
    enumerate_subsets,
    greedy_extend,
    greedy_min_st_cut,
    min_st_cut,
    select_next_part,
)

__version__ = "0.1.0"

__all__ = [
    "SideDistributions",
    "bound_b",
    "bound_tightened",
    "BasisCut",
    "BipartiteGraph",
    "Constraint",
    "ContingencyTable",
    "Correspondence",
    "CutBasis",
    "DataError",
    "GroundSet",
    "MinCutResult",
    "PartSet",
    "Partition",
    "SolverConfig",
    "SolverState",
    "Status",
    "all_pairs_min_cut",
    "bipartite_basis",
    "bnb_min_st_cut",
    "brute_force_min_st_cut",
    "build_contingency",
    "build_partition",
    "crossing_pairs",
    "cut_basis",
    "dissimilarity_report",
    "emit_dot",
    "enumerate_subsets",
    "greedy_extend",
    "greedy_min_st_cut",
    "intersect_ground",
    "is_mutual",
    "min_st_cut",
    "min_st_cut_graph",
    "mutual_partner",
    "nontrivial_partner",
    "optimal_partner",
    "parse_partition_file",
    "partition_from_labels",
    "peak",
    "phi",
    "phi_min",
    "phi_star",
    "phi_star_constrained",
    "select_next_part",
    "total_dissimilarity",
    "write_partition_file",
]
