//! Range assignment solvers for asymmetric wireless networks.
//!
//! Every point of an instance gets a transmission range; the induced
//! communication graph has an edge p -> q whenever q is within p's range,
//! and the cost of an assignment is the total number of edges (the network's
//! total interference). The crate provides an exact cubic-time solver for
//! collinear points, a factor-2 approximation for planar points built on
//! minimum sink trees, brute-force reference solvers, instance generators,
//! and reductions linking the planar problem to Hamiltonicity of grid
//! graphs.

pub mod approx2d;
pub mod arborescence;
pub mod cli;
pub mod core;
pub mod error;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod solver1d;

pub use approx2d::{approximate, ApproxResult, RootPolicy};
pub use arborescence::{min_arborescence, min_sink_tree, Arborescence, SinkTree};
pub use crate::core::{
    build_comm_graph, coverage_weight, is_strongly_connected, is_valid_assignment,
    receiver_interference, sender_interference, total_interference, CommGraph, Dimension,
    Instance, RangeAssignment, WeightedDigraph,
};
pub use error::MtipError;
pub use instances::{
    random_line, random_plane, ExtractionFailure, Gadget, GridGraph, Spread, SET_COST,
};
pub use oracle::{optimal_assignment, OracleBudget};
pub use solver1d::{solve_line, LeftRightAssignment, SinkSide, SinkTables, Solution1d};
