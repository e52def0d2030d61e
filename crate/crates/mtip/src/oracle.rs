//! Brute-force reference solvers. These are deliberately simple exhaustive
//! searches, kept independent of the polynomial algorithms so the two can be
//! checked against each other on small inputs.

use crate::core::{Instance, RangeAssignment, WeightedDigraph};
use crate::error::MtipError;

/// Limits for the exhaustive searches. `max_states` bounds the number of
/// leaves a search may visit; a search that would exceed either limit is
/// refused up front rather than started.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_points: usize,
    pub max_states: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_points: 7,
            max_states: 100_000_000,
        }
    }
}

/// One distance step available to a point: the smallest radius achieving a
/// particular out-neighbour set, with that set's size as its cost.
struct Candidate {
    radius: f64,
    weight: u32,
    covers: u64,
}

/// Exhaustive minimum-interference range assignment.
///
/// Each point only ever needs a range realized by one of its distances
/// (anything in between buys the same edges for no less cost), and in a
/// strongly connected graph on two or more nodes every point transmits to
/// someone, so range zero is never a useful choice. That leaves at most
/// n - 1 candidate radii per point; the search walks them in increasing
/// order per point, keeps the first minimum it finds, and therefore returns
/// the lexicographically smallest optimal range vector.
pub fn optimal_assignment(
    inst: &Instance,
    budget: &OracleBudget,
) -> Result<(RangeAssignment, u64), MtipError> {
    let n = inst.len();
    if n > budget.max_points || n > 64 {
        return Err(MtipError::TooManyPoints {
            n,
            max: budget.max_points.min(64),
        });
    }
    if n == 1 {
        return Ok((RangeAssignment::new(vec![0.0])?, 0));
    }

    let mut cands: Vec<Vec<Candidate>> = Vec::with_capacity(n);
    for p in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&z| z != p).collect();
        order.sort_by(|&a, &b| inst.dist2(p, a).total_cmp(&inst.dist2(p, b)));
        let mut list = Vec::new();
        let mut covers = 0u64;
        let mut lo = 0;
        while lo < order.len() {
            let d2 = inst.dist2(p, order[lo]);
            let mut hi = lo + 1;
            while hi < order.len() && inst.dist2(p, order[hi]) == d2 {
                hi += 1;
            }
            for &z in &order[lo..hi] {
                covers |= 1 << z;
            }
            list.push(Candidate {
                radius: d2.sqrt(),
                weight: hi as u32,
                covers,
            });
            lo = hi;
        }
        cands.push(list);
    }

    let states = cands
        .iter()
        .try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128))
        .unwrap_or(u128::MAX);
    if states > budget.max_states {
        return Err(MtipError::SearchTooLarge {
            states,
            max: budget.max_states,
        });
    }

    // Every remaining point will contribute at least its cheapest candidate.
    let mut suffix_lb = vec![0u64; n + 1];
    for p in (0..n).rev() {
        suffix_lb[p] = suffix_lb[p + 1] + u64::from(cands[p][0].weight);
    }

    let mut masks = vec![0u64; n];
    let mut radii = vec![0.0f64; n];
    let mut best_cost = u64::MAX;
    let mut best: Vec<f64> = Vec::new();
    dfs(
        0,
        0,
        &cands,
        &suffix_lb,
        &mut masks,
        &mut radii,
        &mut best_cost,
        &mut best,
    );
    debug_assert_ne!(best_cost, u64::MAX, "maximal ranges are always valid");
    Ok((RangeAssignment::new(best)?, best_cost))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    p: usize,
    cost: u64,
    cands: &[Vec<Candidate>],
    suffix_lb: &[u64],
    masks: &mut [u64],
    radii: &mut [f64],
    best_cost: &mut u64,
    best: &mut Vec<f64>,
) {
    let n = cands.len();
    if cost + suffix_lb[p] >= *best_cost {
        return;
    }
    if p == n {
        if strongly_connected_masks(masks) {
            *best_cost = cost;
            *best = radii.to_vec();
        }
        return;
    }
    for c in &cands[p] {
        masks[p] = c.covers;
        radii[p] = c.radius;
        dfs(
            p + 1,
            cost + u64::from(c.weight),
            cands,
            suffix_lb,
            masks,
            radii,
            best_cost,
            best,
        );
    }
}

/// Strong connectivity of a graph given as out-neighbour bitmasks: node 0
/// must reach everyone and everyone must reach node 0.
fn strongly_connected_masks(out: &[u64]) -> bool {
    let n = out.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut reach = 1u64;
    loop {
        let mut next = reach;
        let mut ms = reach;
        while ms != 0 {
            let v = ms.trailing_zeros() as usize;
            ms &= ms - 1;
            next |= out[v];
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    if reach != full {
        return false;
    }
    let mut back = 1u64;
    loop {
        let mut next = back;
        for (v, &m) in out.iter().enumerate() {
            if m & back != 0 {
                next |= 1 << v;
            }
        }
        if next == back {
            break;
        }
        back = next;
    }
    back == full
}

/// Cheapest spanning tree on the points `lo..=hi` in which every node has a
/// directed path to `sink`, found by enumerating every way each non-sink
/// node can pick the tree edge it leaves through. Weights are read from `g`
/// at the nodes' own indices, so on a digraph built from an instance the
/// interval inherits the full instance's coverage weights.
pub fn min_sink_tree_cost(
    g: &WeightedDigraph,
    lo: usize,
    hi: usize,
    sink: usize,
    budget: &OracleBudget,
) -> Result<u64, MtipError> {
    check_interval(g, lo, hi, sink)?;
    min_tree_cost(lo, hi, sink, budget, |v, t| u64::from(g.weight(v, t)))
}

/// Cheapest spanning arborescence rooted at `root`: every non-root node has
/// exactly one incoming tree edge and the root reaches everyone. Found by
/// enumerating parent choices, mirroring [`min_sink_tree_cost`] with every
/// edge read in the opposite direction.
pub fn min_arborescence_cost(
    g: &WeightedDigraph,
    root: usize,
    budget: &OracleBudget,
) -> Result<u64, MtipError> {
    let n = g.n();
    if n == 0 {
        return Err(MtipError::EmptyInstance);
    }
    check_interval(g, 0, n - 1, root)?;
    min_tree_cost(0, n - 1, root, budget, |v, t| u64::from(g.weight(t, v)))
}

fn check_interval(g: &WeightedDigraph, lo: usize, hi: usize, root: usize) -> Result<(), MtipError> {
    if root >= g.n() {
        return Err(MtipError::NodeOutOfRange {
            index: root,
            n: g.n(),
        });
    }
    if lo > hi || hi >= g.n() || root < lo || root > hi {
        return Err(MtipError::BadInterval {
            lo,
            hi,
            n: g.n(),
        });
    }
    Ok(())
}

/// Enumerates all functions assigning each non-root node in `lo..=hi` a
/// successor in the interval and keeps the cheapest one whose pointer walks
/// all reach `root`. `edge_cost(v, successor)` prices each pointer.
fn min_tree_cost(
    lo: usize,
    hi: usize,
    root: usize,
    budget: &OracleBudget,
    edge_cost: impl Fn(usize, usize) -> u64,
) -> Result<u64, MtipError> {
    let m = hi - lo + 1;
    if m > budget.max_points {
        return Err(MtipError::TooManyPoints {
            n: m,
            max: budget.max_points,
        });
    }
    if m == 1 {
        return Ok(0);
    }
    let choosers = m - 1;
    let states = (choosers as u128)
        .checked_pow(choosers as u32)
        .unwrap_or(u128::MAX);
    if states > budget.max_states {
        return Err(MtipError::SearchTooLarge {
            states,
            max: budget.max_states,
        });
    }

    let nodes: Vec<usize> = (lo..=hi).filter(|&v| v != root).collect();
    let mut next = vec![usize::MAX; hi + 1];
    let mut best = u64::MAX;
    // Amortized-linear validity check: stamps distinguish "known to reach
    // root this round" from "on the current walk" to detect cycles.
    let mut stamp = vec![0u64; hi + 1];
    let mut epoch = 0u64;
    let mut path = Vec::with_capacity(m);

    enumerate(
        0,
        0,
        &nodes,
        lo,
        hi,
        root,
        &edge_cost,
        &mut next,
        &mut best,
        &mut stamp,
        &mut epoch,
        &mut path,
    );
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    depth: usize,
    cost: u64,
    nodes: &[usize],
    lo: usize,
    hi: usize,
    root: usize,
    edge_cost: &impl Fn(usize, usize) -> u64,
    next: &mut [usize],
    best: &mut u64,
    stamp: &mut [u64],
    epoch: &mut u64,
    path: &mut Vec<usize>,
) {
    if cost >= *best {
        return;
    }
    if depth == nodes.len() {
        if pointers_form_tree(nodes, root, next, stamp, epoch, path) {
            *best = cost;
        }
        return;
    }
    let v = nodes[depth];
    for t in lo..=hi {
        if t == v {
            continue;
        }
        next[v] = t;
        enumerate(
            depth + 1,
            cost + edge_cost(v, t),
            nodes,
            lo,
            hi,
            root,
            edge_cost,
            next,
            best,
            stamp,
            epoch,
            path,
        );
    }
}

fn pointers_form_tree(
    nodes: &[usize],
    root: usize,
    next: &[usize],
    stamp: &mut [u64],
    epoch: &mut u64,
    path: &mut Vec<usize>,
) -> bool {
    // Even stamp value: node confirmed to reach root; odd: on current walk.
    *epoch += 2;
    let good = *epoch;
    let walking = *epoch + 1;
    stamp[root] = good;
    for &start in nodes {
        if stamp[start] == good {
            continue;
        }
        path.clear();
        let mut v = start;
        while stamp[v] != good {
            if stamp[v] == walking {
                return false;
            }
            stamp[v] = walking;
            path.push(v);
            v = next[v];
        }
        for &u in path.iter() {
            stamp[u] = good;
        }
    }
    true
}
