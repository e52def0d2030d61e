//! Instance generators, grid graphs, and the reduction tying minimum-cost
//! range assignments to Hamiltonian cycles in grid graphs.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::core::{
    build_comm_graph, is_strongly_connected, sender_interference, total_interference, Dimension,
    Instance, RangeAssignment,
};
use crate::error::MtipError;

/// Shape of generated point sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spread {
    /// Independent uniform coordinates in [0, 100).
    Uniform,
    /// Points huddled around a handful of uniform cluster centres.
    Clustered,
    /// Gaps (or radii) growing geometrically by a factor of 1.5, so scales
    /// differ wildly across the instance.
    Geometric,
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic random collinear instance. The same seed always yields the
/// same points; the returned instance is sorted left to right as usual.
pub fn random_line(n: usize, spread: Spread, seed: u64) -> Result<Instance, MtipError> {
    if n == 0 {
        return Err(MtipError::EmptyInstance);
    }
    let mut rng = rng_for(seed);
    // Continuous draws collide with probability zero, but a fresh draw on a
    // duplicate keeps the generator total either way.
    loop {
        let xs = line_coords(n, spread, &mut rng);
        if let Ok((inst, _)) = Instance::line(&xs) {
            return Ok(inst);
        }
    }
}

fn line_coords(n: usize, spread: Spread, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match spread {
        Spread::Uniform => (0..n).map(|_| rng.random_range(0.0..100.0)).collect(),
        Spread::Clustered => {
            let k = (n as f64).sqrt().ceil() as usize;
            let centres: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..100.0)).collect();
            (0..n)
                .map(|_| {
                    let c = centres[rng.random_range(0..centres.len())];
                    c + rng.random_range(-0.5..0.5)
                })
                .collect()
        }
        Spread::Geometric => {
            let mut x = rng.random_range(0.0..1.0);
            let mut gap = rng.random_range(0.5..1.5);
            let mut xs = Vec::with_capacity(n);
            for _ in 0..n {
                xs.push(x);
                x += gap;
                gap *= 1.5;
            }
            xs
        }
    }
}

/// Deterministic random planar instance.
pub fn random_plane(n: usize, spread: Spread, seed: u64) -> Result<Instance, MtipError> {
    if n == 0 {
        return Err(MtipError::EmptyInstance);
    }
    let mut rng = rng_for(seed);
    loop {
        let pts = plane_coords(n, spread, &mut rng);
        if let Ok(inst) = Instance::plane(&pts) {
            return Ok(inst);
        }
    }
}

fn plane_coords(n: usize, spread: Spread, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    match spread {
        Spread::Uniform => (0..n)
            .map(|_| (rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)))
            .collect(),
        Spread::Clustered => {
            let k = (n as f64).sqrt().ceil() as usize;
            let centres: Vec<(f64, f64)> = (0..k)
                .map(|_| (rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)))
                .collect();
            (0..n)
                .map(|_| {
                    let (cx, cy) = centres[rng.random_range(0..centres.len())];
                    (
                        cx + rng.random_range(-0.5..0.5),
                        cy + rng.random_range(-0.5..0.5),
                    )
                })
                .collect()
        }
        Spread::Geometric => {
            let mut radius = rng.random_range(0.5..1.5);
            (0..n)
                .map(|_| {
                    let angle = rng.random_range(0.0..std::f64::consts::TAU);
                    let p = (radius * angle.cos(), radius * angle.sin());
                    radius *= 1.5;
                    p
                })
                .collect()
        }
    }
}

/// An undirected graph on integer plane coordinates whose edges all join
/// vertices at distance exactly 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGraph {
    vertices: Vec<(i64, i64)>,
    edges: Vec<(usize, usize)>,
    edge_set: HashSet<(usize, usize)>,
}

impl GridGraph {
    pub fn new(
        vertices: Vec<(i64, i64)>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, MtipError> {
        if vertices.is_empty() {
            return Err(MtipError::BadGridGraph("no vertices".into()));
        }
        let mut seen = HashSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(MtipError::BadGridGraph(format!(
                    "duplicate vertex at ({}, {})",
                    v.0, v.1
                )));
            }
        }
        let n = vertices.len();
        let mut edge_set = HashSet::new();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(MtipError::BadGridGraph(format!(
                    "edge ({a}, {b}) references a missing vertex"
                )));
            }
            if a == b {
                return Err(MtipError::BadGridGraph(format!("self-loop at vertex {a}")));
            }
            let (ax, ay) = vertices[a];
            let (bx, by) = vertices[b];
            let d2 = (ax - bx).pow(2) + (ay - by).pow(2);
            if d2 != 1 {
                return Err(MtipError::BadGridGraph(format!(
                    "edge ({a}, {b}) joins vertices at squared distance {d2}, not 1"
                )));
            }
            if !edge_set.insert((a.min(b), a.max(b))) {
                return Err(MtipError::BadGridGraph(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(GridGraph {
            vertices,
            edges,
            edge_set,
        })
    }

    /// The full w-by-h grid: every lattice point, every unit edge.
    pub fn rectangle(w: usize, h: usize) -> Result<Self, MtipError> {
        if w == 0 || h == 0 {
            return Err(MtipError::BadGridGraph("empty rectangle".into()));
        }
        let mut vertices = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                vertices.push((x as i64, y as i64));
            }
        }
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    edges.push((v, v + 1));
                }
                if y + 1 < h {
                    edges.push((v, v + w));
                }
            }
        }
        GridGraph::new(vertices, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.edge_set.contains(&(a.min(b), a.max(b)))
    }
}

// Grid coordinates are blown up 5x so that every distance the reduction
// depends on is an exact integer (or an exact integer square): connectors
// sit 5 from their centre, facing connectors of adjacent sets 7 apart,
// perpendicular siblings at sqrt(50), and set centres 17 apart.
const SPACING: i64 = 17;
const OFFSET: i64 = 5;
const SHORT_RANGE: f64 = 5.0;
const LONG_RANGE: f64 = 7.0;

/// Interference each point set contributes in a cycle-encoding assignment,
/// and the floor any valid assignment must pay per set.
pub const SET_COST: u64 = 9;

/// The reduction instance for a grid graph: one five-point set per vertex
/// (a centre plus four connectors toward the axis directions). A
/// Hamiltonian cycle of the grid corresponds exactly to a valid assignment
/// of total interference [`SET_COST`] per set.
#[derive(Debug, Clone, PartialEq)]
pub struct Gadget {
    grid: GridGraph,
    instance: Instance,
}

/// Connector offsets in set order: right, left, top, bottom.
const DIRECTIONS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl Gadget {
    pub fn from_grid(grid: GridGraph) -> Gadget {
        let mut pts = Vec::with_capacity(grid.n_vertices() * 5);
        for &(gx, gy) in grid.vertices() {
            let cx = gx * SPACING;
            let cy = gy * SPACING;
            pts.push((cx as f64, cy as f64));
            for (dx, dy) in DIRECTIONS {
                pts.push(((cx + dx * OFFSET) as f64, (cy + dy * OFFSET) as f64));
            }
        }
        let instance = Instance::plane(&pts).expect("distinct grid vertices give distinct points");
        Gadget { grid, instance }
    }

    /// Recognizes an instance with the exact layout [`Gadget::from_grid`]
    /// produces and rebuilds the grid (with every unit edge) from it.
    pub fn from_instance(inst: &Instance) -> Option<Gadget> {
        if inst.dim() != Dimension::Two || inst.len() % 5 != 0 {
            return None;
        }
        let sets = inst.len() / 5;
        let mut vertices = Vec::with_capacity(sets);
        for v in 0..sets {
            let (cx, cy) = inst.point(5 * v);
            let gx = (cx / SPACING as f64).round();
            let gy = (cy / SPACING as f64).round();
            if !gx.is_finite() || gx.abs() > 1e12 || gy.abs() > 1e12 {
                return None;
            }
            if gx * SPACING as f64 != cx || gy * SPACING as f64 != cy {
                return None;
            }
            for (i, (dx, dy)) in DIRECTIONS.iter().enumerate() {
                let want = (
                    cx + (dx * OFFSET) as f64,
                    cy + (dy * OFFSET) as f64,
                );
                if inst.point(5 * v + 1 + i) != want {
                    return None;
                }
            }
            vertices.push((gx as i64, gy as i64));
        }
        let mut edges = Vec::new();
        for a in 0..sets {
            for b in a + 1..sets {
                let d2 = (vertices[a].0 - vertices[b].0).pow(2)
                    + (vertices[a].1 - vertices[b].1).pow(2);
                if d2 == 1 {
                    edges.push((a, b));
                }
            }
        }
        let grid = GridGraph::new(vertices, edges).ok()?;
        let gadget = Gadget::from_grid(grid);
        (gadget.instance == *inst).then_some(gadget)
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn n_sets(&self) -> usize {
        self.grid.n_vertices()
    }

    /// Point indices of set v: centre first, then the right, left, top and
    /// bottom connectors.
    pub fn set_points(&self, v: usize) -> [usize; 5] {
        let base = 5 * v;
        [base, base + 1, base + 2, base + 3, base + 4]
    }

    fn set_of(&self, point: usize) -> usize {
        point / 5
    }

    /// Sum of sender interference over the five points of set v.
    pub fn set_interference(
        &self,
        ranges: &RangeAssignment,
        v: usize,
    ) -> Result<u64, MtipError> {
        if v >= self.n_sets() {
            return Err(MtipError::NodeOutOfRange {
                index: v,
                n: self.n_sets(),
            });
        }
        let mut total = 0;
        for p in self.set_points(v) {
            total += sender_interference(&self.instance, ranges, p)?;
        }
        Ok(total)
    }

    /// Encodes a Hamiltonian cycle of the grid as a range assignment: each
    /// centre reaches its connectors, the connector facing the next vertex
    /// on the cycle stretches to the neighbouring set's facing connector,
    /// and everything else stays short. Costs exactly [`SET_COST`] per set.
    pub fn hamiltonian_assignment(&self, cycle: &[usize]) -> Result<RangeAssignment, MtipError> {
        let sets = self.n_sets();
        if cycle.len() != sets {
            return Err(MtipError::NotHamiltonianCycle(format!(
                "cycle visits {} of {} vertices",
                cycle.len(),
                sets
            )));
        }
        if sets < 3 {
            return Err(MtipError::NotHamiltonianCycle(
                "a cycle needs at least three vertices".into(),
            ));
        }
        let mut seen = vec![false; sets];
        for &v in cycle {
            if v >= sets {
                return Err(MtipError::NotHamiltonianCycle(format!(
                    "vertex {v} out of range"
                )));
            }
            if seen[v] {
                return Err(MtipError::NotHamiltonianCycle(format!(
                    "vertex {v} visited twice"
                )));
            }
            seen[v] = true;
        }
        let mut ranges = vec![SHORT_RANGE; self.instance.len()];
        for (pos, &v) in cycle.iter().enumerate() {
            let next = cycle[(pos + 1) % sets];
            if !self.grid.is_edge(v, next) {
                return Err(MtipError::NotHamiltonianCycle(format!(
                    "consecutive vertices {v} and {next} share no edge"
                )));
            }
            let step = (
                self.grid.vertices()[next].0 - self.grid.vertices()[v].0,
                self.grid.vertices()[next].1 - self.grid.vertices()[v].1,
            );
            let dir = DIRECTIONS
                .iter()
                .position(|&d| d == step)
                .expect("unit edges step along an axis");
            ranges[5 * v + 1 + dir] = LONG_RANGE;
        }
        RangeAssignment::new(ranges)
    }

    /// Reads a Hamiltonian cycle back out of an assignment of total
    /// interference `SET_COST * n_sets`. Each set must spend its one spare
    /// unit on a single connector that just reaches the facing connector of
    /// an adjacent set; those reaches are the cycle edges. The returned
    /// cycle starts at vertex 0.
    pub fn extract_hamiltonian(
        &self,
        ranges: &RangeAssignment,
    ) -> Result<Vec<usize>, ExtractionFailure> {
        let inst = &self.instance;
        if ranges.len() != inst.len() {
            return Err(ExtractionFailure::AssignmentMismatch {
                points: inst.len(),
                ranges: ranges.len(),
            });
        }
        let graph = build_comm_graph(inst, ranges).expect("lengths checked");
        if !is_strongly_connected(&graph) {
            return Err(ExtractionFailure::NotStronglyConnected);
        }
        let sets = self.n_sets();
        let expected = SET_COST * sets as u64;
        let total = total_interference(inst, ranges).expect("lengths checked");
        if total != expected {
            return Err(ExtractionFailure::TotalMismatch {
                expected,
                got: total,
            });
        }

        let mut successor = vec![usize::MAX; sets];
        for v in 0..sets {
            // The one spare unit per set only buys a connector range in
            // [7, sqrt(50)): enough for the facing connector of an adjacent
            // set, short of this set's own perpendicular connectors.
            let long: Vec<usize> = self.set_points(v)[1..]
                .iter()
                .copied()
                .filter(|&p| {
                    let r2 = ranges.get(p) * ranges.get(p);
                    (49.0..50.0).contains(&r2)
                })
                .collect();
            if long.len() != 1 {
                return Err(ExtractionFailure::LongConnectorCount {
                    set: v,
                    count: long.len(),
                });
            }
            let mut targets: Vec<usize> = graph
                .out_neighbors(long[0])
                .iter()
                .map(|&q| self.set_of(q))
                .filter(|&s| s != v)
                .collect();
            targets.dedup();
            match targets[..] {
                [] => return Err(ExtractionFailure::NoTarget { set: v }),
                [target] => {
                    if !self.grid.is_edge(v, target) {
                        return Err(ExtractionFailure::NotGridEdge { from: v, to: target });
                    }
                    successor[v] = target;
                }
                _ => return Err(ExtractionFailure::MultipleTargets { set: v }),
            }
        }

        let mut cycle = Vec::with_capacity(sets);
        let mut v = 0;
        loop {
            cycle.push(v);
            v = successor[v];
            if v == 0 {
                break;
            }
            if cycle.len() == sets {
                return Err(ExtractionFailure::NotSingleCycle);
            }
        }
        if cycle.len() != sets {
            return Err(ExtractionFailure::NotSingleCycle);
        }
        Ok(cycle)
    }
}

/// Why reading a cycle out of an assignment failed. Any failure means the
/// assignment does not encode a Hamiltonian cycle in the expected form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractionFailure {
    AssignmentMismatch { points: usize, ranges: usize },
    NotStronglyConnected,
    TotalMismatch { expected: u64, got: u64 },
    LongConnectorCount { set: usize, count: usize },
    NoTarget { set: usize },
    MultipleTargets { set: usize },
    NotGridEdge { from: usize, to: usize },
    NotSingleCycle,
}

impl fmt::Display for ExtractionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractionFailure::AssignmentMismatch { points, ranges } => {
                write!(f, "{points} points but {ranges} ranges")
            }
            ExtractionFailure::NotStronglyConnected => {
                write!(f, "assignment is not strongly connected")
            }
            ExtractionFailure::TotalMismatch { expected, got } => {
                write!(f, "total interference is {got}, expected {expected}")
            }
            ExtractionFailure::LongConnectorCount { set, count } => {
                write!(f, "set {set} has {count} long connectors, expected 1")
            }
            ExtractionFailure::NoTarget { set } => {
                write!(f, "set {set}'s long connector reaches no other set")
            }
            ExtractionFailure::MultipleTargets { set } => {
                write!(f, "set {set} reaches more than one other set")
            }
            ExtractionFailure::NotGridEdge { from, to } => {
                write!(f, "sets {from} and {to} are not grid-adjacent")
            }
            ExtractionFailure::NotSingleCycle => {
                write!(f, "set successors form more than one cycle")
            }
        }
    }
}

impl std::error::Error for ExtractionFailure {}
