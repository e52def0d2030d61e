//! Problem instances, range assignments, and the two graph views built from
//! them: the asymmetric communication graph induced by an assignment, and the
//! complete digraph of coverage weights used by the solvers.

mod comm_graph;
mod instance;
mod weighted_digraph;

pub use comm_graph::{
    build_comm_graph, is_strongly_connected, is_valid_assignment, receiver_interference,
    sender_interference, total_interference, CommGraph,
};
pub use instance::{Dimension, Instance, RangeAssignment};
pub use weighted_digraph::{coverage_weight, WeightedDigraph};
