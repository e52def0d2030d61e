//! Factor-2 approximation for planar (and general) instances.
//!
//! Two cheap assignments are overlaid: a broadcast star, where one root
//! covers every point directly, and a minimum sink tree, where every point
//! drains toward that root. Taking the pointwise maximum of the two range
//! vectors yields a strongly connected assignment whose interference is
//! exactly the sum of the two parts, and each part on its own is a lower
//! bound for the optimum, which gives the factor of two.

use crate::arborescence::min_sink_tree;
use crate::core::{Instance, RangeAssignment, WeightedDigraph};
use crate::error::MtipError;
use rayon::prelude::*;

/// How the shared root point is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootPolicy {
    /// Use this point.
    Fixed(usize),
    /// Use point 0.
    First,
    /// Try every point and keep the cheapest result (lowest index on ties).
    Best,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub assignment: RangeAssignment,
    pub total: u64,
    pub root: usize,
    /// Interference of the broadcast star alone: always n - 1.
    pub broadcast: u64,
    /// Interference of the sink tree alone.
    pub sink: u64,
}

fn check_root(inst: &Instance, root: usize) -> Result<(), MtipError> {
    if root >= inst.len() {
        return Err(MtipError::NodeOutOfRange {
            index: root,
            n: inst.len(),
        });
    }
    Ok(())
}

/// The broadcast star: the root's range reaches the farthest point, every
/// other range is zero. Costs exactly n - 1 edges.
pub fn broadcast_assignment(
    inst: &Instance,
    root: usize,
) -> Result<(RangeAssignment, u64), MtipError> {
    check_root(inst, root)?;
    let n = inst.len();
    let mut ranges = vec![0.0f64; n];
    let far = (0..n)
        .filter(|&q| q != root)
        .map(|q| inst.dist2(root, q))
        .max_by(f64::total_cmp)
        .unwrap_or(0.0);
    ranges[root] = far.sqrt();
    Ok((RangeAssignment::new(ranges)?, n as u64 - 1))
}

/// The minimum sink tree toward the root, as ranges: every non-root point
/// reaches exactly as far as its tree edge. The cost is the tree's coverage
/// weight, which is also the interference these ranges cause.
pub fn sink_tree_assignment(
    inst: &Instance,
    g: &WeightedDigraph,
    root: usize,
) -> Result<(RangeAssignment, u64), MtipError> {
    check_root(inst, root)?;
    let tree = min_sink_tree(g, root)?;
    let ranges = tree
        .next
        .iter()
        .enumerate()
        .map(|(p, &next)| match next {
            Some(q) => inst.dist2(p, q).sqrt(),
            None => 0.0,
        })
        .collect();
    Ok((RangeAssignment::new(ranges)?, tree.total))
}

/// Both parts overlaid for one root choice.
pub fn approximate_at_root(
    inst: &Instance,
    g: &WeightedDigraph,
    root: usize,
) -> Result<ApproxResult, MtipError> {
    let (star, broadcast) = broadcast_assignment(inst, root)?;
    let (tree, sink) = sink_tree_assignment(inst, g, root)?;
    let ranges = star
        .as_slice()
        .iter()
        .zip(tree.as_slice())
        .map(|(&a, &b)| a.max(b))
        .collect();
    Ok(ApproxResult {
        assignment: RangeAssignment::new(ranges)?,
        total: broadcast + sink,
        root,
        broadcast,
        sink,
    })
}

/// Runs the approximation with the given root policy. The weight digraph is
/// built once and shared; under [`RootPolicy::Best`] the per-root runs are
/// independent and executed in parallel.
pub fn approximate(inst: &Instance, policy: RootPolicy) -> Result<ApproxResult, MtipError> {
    let g = WeightedDigraph::from_instance(inst);
    match policy {
        RootPolicy::Fixed(root) => approximate_at_root(inst, &g, root),
        RootPolicy::First => approximate_at_root(inst, &g, 0),
        RootPolicy::Best => {
            let runs: Result<Vec<_>, _> = (0..inst.len())
                .into_par_iter()
                .map(|root| approximate_at_root(inst, &g, root))
                .collect();
            runs?
                .into_iter()
                .min_by_key(|r| (r.total, r.root))
                .ok_or(MtipError::EmptyInstance)
        }
    }
}
