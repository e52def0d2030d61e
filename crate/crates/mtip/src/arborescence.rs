//! Minimum spanning arborescences and sink trees on complete weighted
//! digraphs, via recursive cycle contraction.

use crate::core::WeightedDigraph;
use crate::error::MtipError;

/// A spanning tree of directed edges pointing away from `root`:
/// `parent[v]` is the tree edge into v, `None` exactly at the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arborescence {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub total: u64,
}

/// A spanning tree of directed edges draining into `sink`: `next[v]` is the
/// edge v leaves through, `None` exactly at the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkTree {
    pub sink: usize,
    pub next: Vec<Option<usize>>,
    pub total: u64,
}

/// Minimum-weight spanning arborescence rooted at `root`.
///
/// Greedily picks the cheapest incoming edge per node; if those picks form a
/// cycle, the cycle is contracted into one super-node whose incoming edges
/// are re-priced by how much they improve on the cycle edge they would
/// replace, and the smaller instance is solved recursively. Unwinding keeps
/// every cycle edge except the one displaced where the recursion's solution
/// enters the cycle. The final weight is summed from the original matrix,
/// so the re-pricing never has to track its dropped constants.
pub fn min_arborescence(
    g: &WeightedDigraph,
    root: usize,
) -> Result<Arborescence, MtipError> {
    let n = g.n();
    if n == 0 {
        return Err(MtipError::EmptyInstance);
    }
    if root >= n {
        return Err(MtipError::NodeOutOfRange { index: root, n });
    }
    let mut w = vec![0i64; n * n];
    for p in 0..n {
        for q in 0..n {
            if p != q {
                w[p * n + q] = i64::from(g.weight(p, q));
            }
        }
    }
    let parent = contract(n, &w, root);
    let mut total = 0u64;
    let parent = (0..n)
        .map(|v| {
            if v == root {
                None
            } else {
                total += u64::from(g.weight(parent[v], v));
                Some(parent[v])
            }
        })
        .collect();
    Ok(Arborescence {
        root,
        parent,
        total,
    })
}

/// Minimum-weight spanning sink tree into `sink`: the arborescence of the
/// edge-reversed digraph, read back in the original edge direction.
pub fn min_sink_tree(g: &WeightedDigraph, sink: usize) -> Result<SinkTree, MtipError> {
    let arb = min_arborescence(&g.invert(), sink)?;
    let mut total = 0u64;
    for (v, &p) in arb.parent.iter().enumerate() {
        if let Some(p) = p {
            total += u64::from(g.weight(v, p));
        }
    }
    debug_assert_eq!(total, arb.total);
    Ok(SinkTree {
        sink,
        next: arb.parent,
        total,
    })
}

/// One contraction level: returns the parent of every non-root node,
/// indices local to this level.
fn contract(n: usize, w: &[i64], root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; n];
    for v in 0..n {
        if v == root {
            continue;
        }
        let mut best = i64::MAX;
        for u in 0..n {
            if u != v && w[u * n + v] < best {
                best = w[u * n + v];
                parent[v] = u;
            }
        }
    }

    // comp[v] numbers the contracted node v belongs to: survivors first in
    // index order, then one node per greedy cycle.
    let (comp, survivors, cycles) = parent_components(&parent, root);
    if cycles.is_empty() {
        return parent;
    }
    let m = survivors + cycles.len();

    // A node inside a cycle is entered by replacing its cycle edge, so
    // edges into it are re-priced by what they save over that edge.
    let mut discount = vec![0i64; n];
    for cycle in &cycles {
        for &v in cycle {
            discount[v] = w[parent[v] * n + v];
        }
    }

    // Cheapest original edge between each pair of contracted nodes.
    let mut nw = vec![i64::MAX; m * m];
    let mut arg = vec![(usize::MAX, usize::MAX); m * m];
    for u in 0..n {
        let cu = comp[u];
        for v in 0..n {
            let cv = comp[v];
            if cu == cv || v == root {
                continue;
            }
            let adjusted = w[u * n + v] - discount[v];
            if adjusted < nw[cu * m + cv] {
                nw[cu * m + cv] = adjusted;
                arg[cu * m + cv] = (u, v);
            }
        }
    }

    let sub = contract(m, &nw, comp[root]);

    // Unwind: every contracted node's incoming edge names an original edge
    // (u, v). For a survivor that is simply its parent; inside a cycle it
    // displaces v's cycle edge and the other members keep theirs.
    for (x, &p) in sub.iter().enumerate() {
        if x == comp[root] {
            continue;
        }
        let (u, v) = arg[p * m + x];
        parent[v] = u;
    }
    parent
}

/// Numbers the contracted components of the greedy parent pointers:
/// survivors keep their relative order, each cycle becomes one trailing
/// node. Returns the numbering, the survivor count, and the cycles.
fn parent_components(parent: &[usize], root: usize) -> (Vec<usize>, usize, Vec<Vec<usize>>) {
    let n = parent.len();
    let mut color = vec![0u8; n];
    color[root] = 2;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut v = start;
        while color[v] == 0 {
            color[v] = 1;
            v = parent[v];
        }
        if color[v] == 1 {
            // Walked into our own trail: v closes a fresh cycle.
            let mut cycle = vec![v];
            let mut u = parent[v];
            while u != v {
                cycle.push(u);
                u = parent[u];
            }
            cycles.push(cycle);
        }
        let mut u = start;
        while color[u] == 1 {
            color[u] = 2;
            u = parent[u];
        }
    }

    let mut comp = vec![usize::MAX; n];
    let mut in_cycle = vec![false; n];
    for (idx, cycle) in cycles.iter().enumerate() {
        for &u in cycle {
            comp[u] = idx; // shifted past the survivors below
            in_cycle[u] = true;
        }
    }
    let mut survivors = 0;
    for c in comp.iter_mut() {
        if *c == usize::MAX {
            *c = survivors;
            survivors += 1;
        }
    }
    for (v, c) in comp.iter_mut().enumerate() {
        if in_cycle[v] {
            *c += survivors;
        }
    }
    (comp, survivors, cycles)
}
