//! Randomized structural invariants. Each property states something that
//! must hold for every input, not just the seeded samples the acceptance
//! suite pins down: conservation laws of the interference model, weight
//! monotonicity, order independence, and the shape of reconstructed trees.

use proptest::prelude::*;

use mtip::approx2d::approximate_at_root;
use mtip::{
    build_comm_graph, coverage_weight, is_valid_assignment, min_arborescence, min_sink_tree,
    receiver_interference, sender_interference, solve_line, total_interference, Instance,
    MtipError, RangeAssignment, SinkSide, SinkTables, WeightedDigraph,
};

/// Coordinates drawn from a small integer lattice, then scattered: ties in
/// pairwise distances stay common, which is where ordering bugs hide.
fn line_points() -> impl Strategy<Value = Instance> {
    prop::collection::btree_set(-40i32..40, 2..9)
        .prop_map(|xs| {
            let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
            Instance::line(&xs).expect("distinct finite coordinates").0
        })
}

fn plane_points() -> impl Strategy<Value = Instance> {
    prop::collection::btree_set((-30i32..30, -30i32..30), 2..9).prop_map(|pts| {
        let pts: Vec<(f64, f64)> = pts
            .into_iter()
            .map(|(x, y)| (f64::from(x), f64::from(y)))
            .collect();
        Instance::plane(&pts).expect("distinct finite coordinates")
    })
}

fn any_instance() -> impl Strategy<Value = Instance> {
    prop_oneof![line_points(), plane_points()]
}

/// An instance together with arbitrary nonnegative ranges for its points.
fn instance_with_ranges() -> impl Strategy<Value = (Instance, RangeAssignment)> {
    any_instance().prop_flat_map(|inst| {
        let n = inst.len();
        (
            Just(inst),
            prop::collection::vec(0.0f64..90.0, n)
                .prop_map(|rs| RangeAssignment::new(rs).expect("finite nonnegative")),
        )
    })
}

fn weight_matrix() -> impl Strategy<Value = WeightedDigraph> {
    (2..8usize)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(1u32..40, n), n))
        .prop_map(|mut rows| {
            for (p, row) in rows.iter_mut().enumerate() {
                row[p] = 0;
            }
            WeightedDigraph::from_matrix(rows).expect("square matrix")
        })
}

proptest! {
    /// Interference is conserved: every edge has one sender and one
    /// receiver, so the two per-point sums and the edge count agree.
    #[test]
    fn interference_sums_agree((inst, ranges) in instance_with_ranges()) {
        let graph = build_comm_graph(&inst, &ranges).unwrap();
        let total = total_interference(&inst, &ranges).unwrap();
        let sent: u64 = (0..inst.len())
            .map(|p| sender_interference(&inst, &ranges, p).unwrap())
            .sum();
        let received: u64 = (0..inst.len())
            .map(|p| receiver_interference(&inst, &ranges, p).unwrap())
            .sum();
        prop_assert_eq!(total, graph.edge_count());
        prop_assert_eq!(total, sent);
        prop_assert_eq!(total, received);
    }

    /// Coverage weight grows with distance, strictly when the distance
    /// strictly grows, and counts at least the target itself.
    #[test]
    fn coverage_weight_is_monotone(inst in any_instance()) {
        let n = inst.len();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if p == q || p == r {
                        continue;
                    }
                    let wq = coverage_weight(&inst, p, q).unwrap();
                    prop_assert!(wq >= 1 && wq <= (n - 1) as u32);
                    let wr = coverage_weight(&inst, p, r).unwrap();
                    if inst.dist2(p, q) < inst.dist2(p, r) {
                        prop_assert!(wq < wr, "p={} q={} r={}", p, q, r);
                    } else if inst.dist2(p, q) == inst.dist2(p, r) {
                        prop_assert_eq!(wq, wr);
                    }
                }
            }
        }
    }

    /// Inverting a weight digraph twice is the identity, and a single
    /// inversion transposes every weight.
    #[test]
    fn inversion_is_an_involution(g in weight_matrix()) {
        let inv = g.invert();
        for p in 0..g.n() {
            for q in 0..g.n() {
                if p != q {
                    prop_assert_eq!(inv.weight(p, q), g.weight(q, p));
                }
            }
        }
        prop_assert_eq!(inv.invert(), g);
    }

    /// The optimum of a line instance does not depend on the order the
    /// coordinates are handed in.
    #[test]
    fn line_optimum_is_order_independent(
        inst in line_points(),
        seed in 0u64..1000,
    ) {
        let sorted = solve_line(&inst).unwrap();

        let mut rows = inst.to_rows();
        // Fisher-Yates with a splitmix-style step; proptest drives the seed.
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for i in (1..rows.len()).rev() {
            state ^= state >> 30;
            state = state.wrapping_mul(0xbf58476d1ce4e5b9);
            state ^= state >> 27;
            rows.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let xs: Vec<f64> = rows.iter().map(|row| row[0]).collect();
        let shuffled = Instance::line(&xs).unwrap().0;
        prop_assert_eq!(solve_line(&shuffled).unwrap().total, sorted.total);
    }

    /// Shrinking every range onto the farthest point it actually reaches
    /// changes nothing about the communication graph.
    #[test]
    fn ranges_snap_to_realized_distances((inst, ranges) in instance_with_ranges()) {
        let graph = build_comm_graph(&inst, &ranges).unwrap();
        let snapped: Vec<f64> = (0..inst.len())
            .map(|p| {
                graph
                    .out_neighbors(p)
                    .iter()
                    .map(|&q| inst.dist2(p, q))
                    .max_by(f64::total_cmp)
                    .map_or(0.0, f64::sqrt)
            })
            .collect();
        let snapped = RangeAssignment::new(snapped).unwrap();
        let regraph = build_comm_graph(&inst, &snapped).unwrap();
        prop_assert_eq!(regraph, graph);
    }

    /// Every root yields a valid approximation whose cost splits into the
    /// claimed broadcast and sink parts.
    #[test]
    fn approximation_is_valid_at_every_root(inst in plane_points()) {
        let g = WeightedDigraph::from_instance(&inst);
        for root in 0..inst.len() {
            let result = approximate_at_root(&inst, &g, root).unwrap();
            prop_assert_eq!(result.total, result.broadcast + result.sink);
            prop_assert_eq!(result.broadcast, inst.len() as u64 - 1);
            prop_assert!(is_valid_assignment(&inst, &result.assignment).unwrap());
            // Only the root broadcasts and the root has no sink edge, so
            // the two parts never share a sender: their costs add exactly.
            prop_assert_eq!(
                total_interference(&inst, &result.assignment).unwrap(),
                result.total
            );
        }
    }

    /// An arborescence is a spanning tree directed away from the root with
    /// honestly summed weight; the matching sink tree mirrors it.
    #[test]
    fn arborescence_is_a_rooted_spanning_tree(g in weight_matrix(), root_pick in 0usize..8) {
        let n = g.n();
        let root = root_pick % n;
        let arb = min_arborescence(&g, root).unwrap();
        prop_assert_eq!(arb.parent.len(), n);
        prop_assert_eq!(arb.parent[root], None);
        let mut total = 0u64;
        for v in 0..n {
            if v == root {
                continue;
            }
            // Walking up must reach the root within n steps: no cycles.
            let mut hops = 0;
            let mut u = v;
            while let Some(p) = arb.parent[u] {
                hops += 1;
                prop_assert!(hops <= n, "cycle above node {}", v);
                u = p;
            }
            prop_assert_eq!(u, root);
            total += u64::from(g.weight(arb.parent[v].unwrap(), v));
        }
        prop_assert_eq!(total, arb.total);

        let sink = min_sink_tree(&g, root).unwrap();
        prop_assert_eq!(sink.next[root], None);
        let mut mirrored = 0u64;
        for v in 0..n {
            if let Some(t) = sink.next[v] {
                mirrored += u64::from(g.weight(v, t));
            }
        }
        prop_assert_eq!(mirrored, sink.total);
    }

    /// Every table cell is realized by its reconstructed tree: one edge
    /// per non-root node, all inside the interval, summing to exactly the
    /// cell, with every node draining into the root.
    #[test]
    fn sink_tables_reconstruct_their_cells(inst in line_points()) {
        let n = inst.len();
        let g = WeightedDigraph::from_instance(&inst);
        let tables = SinkTables::build(&g);
        for i in 0..n {
            for j in i..n {
                for (side, cell, root) in [
                    (SinkSide::Left, tables.s_left(i, j).unwrap(), i),
                    (SinkSide::Right, tables.s_right(i, j).unwrap(), j),
                ] {
                    prop_assert!(cell >= (j - i) as u64);
                    let edges = tables.sink_tree_edges(i, j, side).unwrap();
                    prop_assert_eq!(edges.len(), j - i);
                    let mut outgoing = vec![0usize; n];
                    let mut sum = 0u64;
                    for &(from, to) in &edges {
                        prop_assert!(from >= i && from <= j && to >= i && to <= j);
                        prop_assert!(from != root, "the root transmits nothing");
                        outgoing[from] += 1;
                        sum += u64::from(g.weight(from, to));
                    }
                    prop_assert_eq!(sum, cell);
                    for v in i..=j {
                        prop_assert_eq!(outgoing[v], usize::from(v != root));
                    }
                    // Every node drains into the root.
                    let mut next = vec![usize::MAX; n];
                    for &(from, to) in &edges {
                        next[from] = to;
                    }
                    for mut v in i..=j {
                        let mut hops = 0;
                        while v != root {
                            v = next[v];
                            hops += 1;
                            prop_assert!(hops <= n, "walk must terminate");
                        }
                    }
                }
            }
        }
    }

    /// The exact line solution is internally consistent: the left-right
    /// split realizes the ranges, the measured interference equals the
    /// claimed optimum, and the network works.
    #[test]
    fn line_solution_is_consistent(inst in line_points()) {
        let sol = solve_line(&inst).unwrap();
        let n = inst.len();
        for p in 0..n {
            let split = sol.left_right.left()[p].max(sol.left_right.right()[p]);
            prop_assert_eq!(split, sol.assignment.get(p));
        }
        prop_assert_eq!(sol.left_right.cost(&inst).unwrap(), sol.total);
        prop_assert_eq!(total_interference(&inst, &sol.assignment).unwrap(), sol.total);
        prop_assert!(is_valid_assignment(&inst, &sol.assignment).unwrap());
        for &(from, to) in &sol.witness_edges {
            prop_assert!(from < n && to < n && from != to);
        }
    }

    /// Refusals are stable: planar instances are turned away from the line
    /// solver, mismatched lengths from the measurers.
    #[test]
    fn dimension_and_length_guards_hold(inst in plane_points()) {
        prop_assert_eq!(solve_line(&inst), Err(MtipError::NotOneDimensional));
        let short = RangeAssignment::uniform(inst.len() + 1, 1.0).unwrap();
        let mismatch = matches!(
            total_interference(&inst, &short),
            Err(MtipError::LengthMismatch { .. })
        );
        prop_assert!(mismatch);
    }
}
