//! Exact solver for collinear instances.
//!
//! On a line, an optimal assignment decomposes into blocks of points that
//! funnel their traffic into shared "anchor" points, with each anchor paying
//! one range to the left and one to the right. Two dynamic programs capture
//! this: interval sink trees ([`SinkTables`]) and the anchor recursion over
//! them ([`MtipTables`]). Both are cubic in the number of points, and the
//! stored split choices let the solver rebuild an actual optimal assignment
//! rather than only its cost.

mod dp;
mod sinks;

pub use dp::MtipTables;
pub use sinks::{SinkSide, SinkTables};

use crate::core::{Dimension, Instance, RangeAssignment, WeightedDigraph};
use crate::error::MtipError;

/// A range assignment split into a leftward and a rightward reach per
/// point. The solver works in this form because on a line a point's cost is
/// the larger of what its two directions would cost alone.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftRightAssignment {
    left: Vec<f64>,
    right: Vec<f64>,
}

impl LeftRightAssignment {
    pub fn new(left: Vec<f64>, right: Vec<f64>) -> Result<Self, MtipError> {
        if left.len() != right.len() {
            return Err(MtipError::LengthMismatch {
                points: left.len(),
                ranges: right.len(),
            });
        }
        for side in [&left, &right] {
            for (index, &r) in side.iter().enumerate() {
                if !r.is_finite() {
                    return Err(MtipError::NonFinite { index });
                }
                if r < 0.0 {
                    return Err(MtipError::NegativeRange { index });
                }
            }
        }
        Ok(LeftRightAssignment { left, right })
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    /// Collapses to a single range per point, the larger of the two sides.
    /// A point then reaches everything either side reached, at the cost of
    /// the more expensive side only.
    pub fn to_assignment(&self) -> RangeAssignment {
        let ranges = self
            .left
            .iter()
            .zip(&self.right)
            .map(|(&l, &r)| l.max(r))
            .collect();
        RangeAssignment::new(ranges).expect("both sides already validated")
    }

    /// Sum over points of the larger coverage of the two sides; equals the
    /// total interference of [`LeftRightAssignment::to_assignment`].
    pub fn cost(&self, inst: &Instance) -> Result<u64, MtipError> {
        if inst.len() != self.len() {
            return Err(MtipError::LengthMismatch {
                points: inst.len(),
                ranges: self.len(),
            });
        }
        let n = inst.len();
        let mut total = 0u64;
        for p in 0..n {
            let covered = |radius: f64| {
                (0..n)
                    .filter(|&z| z != p && inst.dist2(p, z).sqrt() <= radius)
                    .count() as u64
            };
            total += covered(self.left[p]).max(covered(self.right[p]));
        }
        Ok(total)
    }
}

/// An optimal solution for a line of points: the assignment, its cost, and
/// the tree and anchor edges the cost accounting is built from. Every range
/// is the exact distance to the witness edge's target.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution1d {
    pub left_right: LeftRightAssignment,
    pub assignment: RangeAssignment,
    pub total: u64,
    pub witness_edges: Vec<(usize, usize)>,
}

/// Computes a minimum-total-interference assignment for a one-dimensional
/// instance in O(n^3) time and O(n^2) space.
pub fn solve_line(inst: &Instance) -> Result<Solution1d, MtipError> {
    if inst.dim() != Dimension::One {
        return Err(MtipError::NotOneDimensional);
    }
    let n = inst.len();
    let g = WeightedDigraph::from_instance(inst);
    let sinks = SinkTables::build(&g);
    let tables = MtipTables::build(inst, &g, &sinks);

    let mut left = vec![0.0f64; n];
    let mut right = vec![0.0f64; n];
    let mut witness_edges = Vec::new();
    let set = |edges: &mut Vec<(usize, usize)>, left: &mut [f64], right: &mut [f64], a: usize, b: usize| {
        let d = inst.dist2(a, b).sqrt();
        if b < a {
            debug_assert_eq!(left[a], 0.0, "left range of {a} set twice");
            left[a] = d;
        } else {
            debug_assert_eq!(right[a], 0.0, "right range of {a} set twice");
            right[a] = d;
        }
        edges.push((a, b));
    };

    // Walk the anchor chain recorded by the tables. Each step lays down the
    // left-sinking block before anchor i's right range, the right-sinking
    // block that ends in the next anchor t, and t's left range back to j-1.
    let (mut i, mut k) = (0usize, 0usize);
    while i + 1 < n {
        let (j, t) = tables.step(i, k);
        for (a, b) in sinks.sink_tree_edges(i, j - 1, SinkSide::Left)? {
            set(&mut witness_edges, &mut left, &mut right, a, b);
        }
        set(&mut witness_edges, &mut left, &mut right, i, j);
        for (a, b) in sinks.sink_tree_edges(j, t, SinkSide::Right)? {
            set(&mut witness_edges, &mut left, &mut right, a, b);
        }
        set(&mut witness_edges, &mut left, &mut right, t, j - 1);
        i = t;
        k = j - 1;
    }

    let left_right = LeftRightAssignment::new(left, right)?;
    let assignment = left_right.to_assignment();
    Ok(Solution1d {
        left_right,
        assignment,
        total: tables.optimum(),
        witness_edges,
    })
}
