//! Exact solvers for the minimum defensive alliance problem.
//!
//! A non-empty vertex set `S` is a defensive alliance when every member has
//! at least as many closed neighbours inside `S` as outside it. This crate
//! provides a verifier and exhaustive oracle, a polynomial algorithm for
//! graphs of maximum degree five, ILP-backed parameterized algorithms for
//! distance to clique and twin cover, and the degree-six hardness reduction
//! from dominating set on cubic graphs.

pub mod alliance;
pub mod dimacs;
pub mod fpt;
pub mod generate;
pub mod graph;
pub mod ilp;
pub mod lowdeg;
pub mod params;
pub mod paths;
pub mod reduction;

pub use alliance::{
    brute_force_min_alliance, brute_force_min_alliance_guarded, protection_threshold,
    verify_alliance, AllianceError, AllianceSolution, Violation,
};
pub use graph::{distances_from, Graph, GraphError, Vertex, UNREACHABLE};
pub use ilp::{encode_min_alliance_ilp, solve_ilp, IlpProblem, IlpSolution, IlpStatus};
pub use lowdeg::{solve_min_alliance_lowdeg, solve_subproblem, SubproblemResult};
pub use paths::{girth, min_disjoint_path_pair, shortest_cycle_through, Cycle, PathPair};
pub use dimacs::{parse_dimacs, parse_dimacs_file, write_dimacs, write_dimacs_with_comments, DimacsError, DimacsFile};
pub use fpt::{
    demand, normalize_partial_cliques, solve_dtc, solve_dtc_with_stats, solve_twincover, solve_twincover_with_stats,
    FptError,
};
pub use generate::{generate, nonisomorphic_graphs, GenerateError, GeneratorSpec};
pub use params::{
    distance_to_clique_set, is_clique_modulator, is_twin_cover, partition_clique_sets, partition_twin_classes,
    twin_cover_set, ParamError, PartitionMode, TwinClass, TwinPartition,
};
pub use reduction::{
    build_reduction, degree_audit, extract_dominating_set, gadget_bounds, is_dominating_set, size_estimate_chain,
    alliance_from_dominating_set, moore_bound, ReductionError, ReductionInstance,
};
