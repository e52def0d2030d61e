use crate::core::instance::{Instance, RangeAssignment};
use crate::error::MtipError;

/// The asymmetric communication graph of a range assignment: a directed edge
/// p -> q exists iff q lies within p's transmission range (inclusive).
///
/// The range test compares `dist2(p, q).sqrt() <= range(p)`. Every range the
/// solvers emit is itself produced as `dist2(..).sqrt()` of some realizing
/// pair, so the edge that realizes a range is recovered by the exact same
/// float computation and can never be lost to rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommGraph {
    adj: Vec<Vec<usize>>,
    in_degree: Vec<u64>,
}

impl CommGraph {
    /// Builds a graph from explicit adjacency lists (mainly for tests).
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self, MtipError> {
        let n = adj.len();
        let mut in_degree = vec![0u64; n];
        for row in &adj {
            for &q in row {
                if q >= n {
                    return Err(MtipError::NodeOutOfRange { index: q, n });
                }
                in_degree[q] += 1;
            }
        }
        Ok(CommGraph { adj, in_degree })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn out_neighbors(&self, p: usize) -> &[usize] {
        &self.adj[p]
    }

    pub fn out_degree(&self, p: usize) -> u64 {
        self.adj[p].len() as u64
    }

    pub fn in_degree(&self, p: usize) -> u64 {
        self.in_degree[p]
    }

    pub fn edge_count(&self) -> u64 {
        self.adj.iter().map(|row| row.len() as u64).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |&q| (p, q)))
    }
}

fn check_lengths(inst: &Instance, ranges: &RangeAssignment) -> Result<(), MtipError> {
    if inst.len() != ranges.len() {
        return Err(MtipError::LengthMismatch {
            points: inst.len(),
            ranges: ranges.len(),
        });
    }
    Ok(())
}

/// Whether q is inside p's range; the single range predicate used everywhere.
pub(crate) fn in_range(inst: &Instance, ranges: &RangeAssignment, p: usize, q: usize) -> bool {
    inst.dist2(p, q).sqrt() <= ranges.get(p)
}

pub fn build_comm_graph(
    inst: &Instance,
    ranges: &RangeAssignment,
) -> Result<CommGraph, MtipError> {
    check_lengths(inst, ranges)?;
    let n = inst.len();
    let mut adj = vec![Vec::new(); n];
    let mut in_degree = vec![0u64; n];
    for p in 0..n {
        for q in 0..n {
            if q != p && in_range(inst, ranges, p, q) {
                adj[p].push(q);
                in_degree[q] += 1;
            }
        }
    }
    Ok(CommGraph { adj, in_degree })
}

/// Number of points p transmits to (its out-degree).
pub fn sender_interference(
    inst: &Instance,
    ranges: &RangeAssignment,
    p: usize,
) -> Result<u64, MtipError> {
    check_lengths(inst, ranges)?;
    let n = inst.len();
    if p >= n {
        return Err(MtipError::NodeOutOfRange { index: p, n });
    }
    Ok((0..n)
        .filter(|&q| q != p && in_range(inst, ranges, p, q))
        .count() as u64)
}

/// Number of points whose transmissions reach p (its in-degree).
pub fn receiver_interference(
    inst: &Instance,
    ranges: &RangeAssignment,
    p: usize,
) -> Result<u64, MtipError> {
    check_lengths(inst, ranges)?;
    let n = inst.len();
    if p >= n {
        return Err(MtipError::NodeOutOfRange { index: p, n });
    }
    Ok((0..n)
        .filter(|&q| q != p && in_range(inst, ranges, q, p))
        .count() as u64)
}

/// Total interference of the assignment: the communication graph's edge
/// count, which equals both the sum of sender and of receiver interference.
pub fn total_interference(inst: &Instance, ranges: &RangeAssignment) -> Result<u64, MtipError> {
    check_lengths(inst, ranges)?;
    let n = inst.len();
    let mut total = 0u64;
    for p in 0..n {
        for q in 0..n {
            if q != p && in_range(inst, ranges, p, q) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// Counts strongly connected components with Kosaraju's two-pass algorithm
/// (iterative, so deep graphs cannot overflow the call stack).
fn scc_count(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut reversed = vec![Vec::new(); n];
    for (p, row) in adj.iter().enumerate() {
        for &q in row {
            reversed[q].push(p);
        }
    }

    // First pass: record finish order on the forward graph.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push((start, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let u = adj[v][*next];
                *next += 1;
                if !seen[u] {
                    seen[u] = true;
                    stack.push((u, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }

    // Second pass: sweep the reverse graph in reverse finish order.
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    let mut work = Vec::new();
    for &root in order.iter().rev() {
        if component[root] != usize::MAX {
            continue;
        }
        component[root] = count;
        work.push(root);
        while let Some(v) = work.pop() {
            for &u in &reversed[v] {
                if component[u] == usize::MAX {
                    component[u] = count;
                    work.push(u);
                }
            }
        }
        count += 1;
    }
    count
}

pub fn is_strongly_connected(graph: &CommGraph) -> bool {
    graph.n() <= 1 || scc_count(&graph.adj) == 1
}

/// An assignment is valid when its communication graph is strongly connected.
pub fn is_valid_assignment(inst: &Instance, ranges: &RangeAssignment) -> Result<bool, MtipError> {
    let graph = build_comm_graph(inst, ranges)?;
    Ok(is_strongly_connected(&graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::instance::Instance;

    fn line(xs: &[f64]) -> Instance {
        Instance::line(xs).unwrap().0
    }

    #[test]
    fn unit_ranges_on_three_collinear_points() {
        let inst = line(&[0.0, 1.0, 2.0]);
        let ranges = RangeAssignment::uniform(3, 1.0).unwrap();
        let g = build_comm_graph(&inst, &ranges).unwrap();
        assert_eq!(g.out_neighbors(0), &[1]);
        assert_eq!(g.out_neighbors(1), &[0, 2]);
        assert_eq!(g.out_neighbors(2), &[1]);
        assert_eq!(g.edge_count(), 4);
        for p in 0..3 {
            assert_eq!(
                sender_interference(&inst, &ranges, p).unwrap(),
                g.out_degree(p)
            );
            assert_eq!(
                receiver_interference(&inst, &ranges, p).unwrap(),
                g.in_degree(p)
            );
        }
        assert_eq!(total_interference(&inst, &ranges).unwrap(), 4);
        assert!(is_strongly_connected(&g));
    }

    #[test]
    fn range_equal_to_distance_is_inclusive() {
        let inst = line(&[0.0, 2.0]);
        let ranges = RangeAssignment::new(vec![2.0, 0.0]).unwrap();
        let g = build_comm_graph(&inst, &ranges).unwrap();
        assert_eq!(g.out_neighbors(0), &[1]);
        assert_eq!(g.out_degree(1), 0);
        assert!(!is_strongly_connected(&g));
    }

    #[test]
    fn zero_range_node_breaks_validity() {
        let inst = line(&[0.0, 1.0, 2.0]);
        let ranges = RangeAssignment::new(vec![1.0, 1.0, 0.0]).unwrap();
        assert_eq!(total_interference(&inst, &ranges).unwrap(), 3);
        assert!(!is_valid_assignment(&inst, &ranges).unwrap());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let inst = line(&[0.0, 1.0]);
        let ranges = RangeAssignment::uniform(3, 1.0).unwrap();
        assert_eq!(
            total_interference(&inst, &ranges),
            Err(MtipError::LengthMismatch {
                points: 2,
                ranges: 3
            })
        );
    }

    #[test]
    fn scc_counting_on_handwritten_graphs() {
        // Directed cycle: one component.
        let cycle = CommGraph::from_adjacency(vec![vec![1], vec![2], vec![0]]).unwrap();
        assert!(is_strongly_connected(&cycle));
        // A path is not strongly connected.
        let path = CommGraph::from_adjacency(vec![vec![1], vec![2], vec![]]).unwrap();
        assert!(!is_strongly_connected(&path));
        // Two 2-cycles joined one way: two components.
        let two = CommGraph::from_adjacency(vec![vec![1], vec![0, 2], vec![3], vec![2]]).unwrap();
        assert!(!is_strongly_connected(&two));
        assert_eq!(scc_count(&two.adj), 2);
        // Singleton and empty-ish cases.
        assert!(is_strongly_connected(
            &CommGraph::from_adjacency(vec![vec![]]).unwrap()
        ));
        let isolated = CommGraph::from_adjacency(vec![vec![], vec![]]).unwrap();
        assert!(!is_strongly_connected(&isolated));
    }

    #[test]
    fn from_adjacency_checks_indices() {
        assert_eq!(
            CommGraph::from_adjacency(vec![vec![2], vec![]]),
            Err(MtipError::NodeOutOfRange { index: 2, n: 2 })
        );
    }
}
