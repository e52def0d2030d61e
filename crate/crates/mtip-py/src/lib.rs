//! Python bindings for the mtip solver library.
//!
//! Exposes instances, the exact line solver, the planar approximation, the
//! brute-force reference search, interference measurement, and the
//! grid-graph reduction gadget. Indices and range vectors at this surface
//! always follow the order in which the caller supplied the points.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mtip::{
    approximate as approximate_core, build_comm_graph, coverage_weight as coverage_weight_core,
    is_valid_assignment, optimal_assignment, receiver_interference as receiver_interference_core,
    sender_interference as sender_interference_core, solve_line as solve_line_core,
    total_interference as total_interference_core, Gadget as CoreGadget, GridGraph,
    Instance as CoreInstance, MtipError, OracleBudget, RangeAssignment, RootPolicy,
};

fn value_error(err: MtipError) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A set of stations in one or two dimensions.
///
/// Construct with `Instance.line(xs)` or `Instance.plane(points)`. All
/// indices and per-point vectors exchanged with this class refer to points
/// by their position in the constructor's argument.
#[pyclass(frozen)]
struct Instance {
    inner: CoreInstance,
    /// order[input position] = index inside `inner`.
    order: Vec<usize>,
}

impl Instance {
    /// Reorders a caller-supplied per-point vector into internal order.
    fn ranges_in(&self, ranges: Vec<f64>) -> PyResult<RangeAssignment> {
        if ranges.len() != self.inner.len() {
            return Err(value_error(MtipError::LengthMismatch {
                points: self.inner.len(),
                ranges: ranges.len(),
            }));
        }
        let mut stored = vec![0.0; ranges.len()];
        for (pos, &idx) in self.order.iter().enumerate() {
            stored[idx] = ranges[pos];
        }
        RangeAssignment::new(stored).map_err(value_error)
    }

    /// Reorders an internal per-point vector into the caller's order.
    fn ranges_out(&self, ranges: &[f64]) -> Vec<f64> {
        self.order.iter().map(|&idx| ranges[idx]).collect()
    }

    fn index_in(&self, p: usize) -> PyResult<usize> {
        if p >= self.inner.len() {
            return Err(value_error(MtipError::NodeOutOfRange {
                index: p,
                n: self.inner.len(),
            }));
        }
        Ok(self.order[p])
    }

    fn positions_out(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.order.len()];
        for (pos, &idx) in self.order.iter().enumerate() {
            out[idx] = pos;
        }
        out
    }
}

#[pymethods]
impl Instance {
    /// Collinear stations at the given coordinates.
    #[staticmethod]
    fn line(xs: Vec<f64>) -> PyResult<Self> {
        let rows: Vec<Vec<f64>> = xs.into_iter().map(|x| vec![x]).collect();
        let (inner, order) =
            CoreInstance::from_rows(mtip::Dimension::One, &rows).map_err(value_error)?;
        Ok(Instance { inner, order })
    }

    /// Planar stations at the given (x, y) coordinates.
    #[staticmethod]
    fn plane(points: Vec<(f64, f64)>) -> PyResult<Self> {
        let rows: Vec<Vec<f64>> = points.into_iter().map(|(x, y)| vec![x, y]).collect();
        let (inner, order) =
            CoreInstance::from_rows(mtip::Dimension::Two, &rows).map_err(value_error)?;
        Ok(Instance { inner, order })
    }

    /// Spatial dimension: 1 or 2.
    #[getter]
    fn dim(&self) -> u8 {
        self.inner.dim().width() as u8
    }

    /// Point coordinates, one row per point, in constructor order.
    #[getter]
    fn points(&self) -> Vec<Vec<f64>> {
        let rows = self.inner.to_rows();
        self.order.iter().map(|&idx| rows[idx].clone()).collect()
    }

    /// Euclidean distance between two points.
    fn dist(&self, p: usize, q: usize) -> PyResult<f64> {
        let (p, q) = (self.index_in(p)?, self.index_in(q)?);
        Ok(self.inner.dist2(p, q).sqrt())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Instance(dim={}, n={})", self.dim(), self.inner.len())
    }
}

/// An exact minimum-interference solution for a line instance.
#[pyclass(frozen)]
struct Solution {
    /// The minimum total interference.
    #[pyo3(get)]
    total: u64,
    /// Optimal range per point.
    #[pyo3(get)]
    ranges: Vec<f64>,
    /// Leftward component of each range.
    #[pyo3(get)]
    left: Vec<f64>,
    /// Rightward component of each range.
    #[pyo3(get)]
    right: Vec<f64>,
    /// Directed edges realizing each point's range.
    #[pyo3(get)]
    witness_edges: Vec<(usize, usize)>,
}

#[pymethods]
impl Solution {
    fn __repr__(&self) -> String {
        format!("Solution(total={}, n={})", self.total, self.ranges.len())
    }
}

/// Solve a one-dimensional instance exactly in cubic time.
#[pyfunction]
fn solve_line(inst: &Instance, py: Python<'_>) -> PyResult<Solution> {
    let sol = py
        .detach(|| solve_line_core(&inst.inner))
        .map_err(value_error)?;
    let positions = inst.positions_out();
    Ok(Solution {
        total: sol.total,
        ranges: inst.ranges_out(sol.assignment.as_slice()),
        left: inst.ranges_out(sol.left_right.left()),
        right: inst.ranges_out(sol.left_right.right()),
        witness_edges: sol
            .witness_edges
            .iter()
            .map(|&(a, b)| (positions[a], positions[b]))
            .collect(),
    })
}

/// A factor-two solution built from a broadcast star and a sink tree.
#[pyclass(frozen)]
struct Approximation {
    #[pyo3(get)]
    total: u64,
    #[pyo3(get)]
    root: usize,
    /// Interference of the broadcast star alone: always n - 1.
    #[pyo3(get)]
    broadcast: u64,
    /// Interference of the sink tree alone.
    #[pyo3(get)]
    sink: u64,
    #[pyo3(get)]
    ranges: Vec<f64>,
}

#[pymethods]
impl Approximation {
    fn __repr__(&self) -> String {
        format!(
            "Approximation(total={}, root={}, broadcast={}, sink={})",
            self.total, self.root, self.broadcast, self.sink
        )
    }
}

/// Approximate any instance within a factor of two of the optimum.
///
/// Args:
///     root_policy: "first", "best", or a point index to root at.
#[pyfunction]
#[pyo3(signature = (inst, root_policy="best"))]
fn approximate(inst: &Instance, root_policy: &str, py: Python<'_>) -> PyResult<Approximation> {
    let policy = match root_policy {
        "first" => RootPolicy::First,
        "best" => RootPolicy::Best,
        other => match other.parse::<usize>() {
            Ok(index) => RootPolicy::Fixed(inst.index_in(index)?),
            Err(_) => {
                return Err(PyValueError::new_err(format!(
                    "root_policy must be \"first\", \"best\", or a point index, got {other:?}"
                )));
            }
        },
    };
    let result = py
        .detach(|| approximate_core(&inst.inner, policy))
        .map_err(value_error)?;
    Ok(Approximation {
        total: result.total,
        root: inst.positions_out()[result.root],
        broadcast: result.broadcast,
        sink: result.sink,
        ranges: inst.ranges_out(result.assignment.as_slice()),
    })
}

/// Brute-force the optimum of a tiny instance.
///
/// Returns (ranges, total). `max_states` lifts the default limits for
/// larger searches.
#[pyfunction]
#[pyo3(signature = (inst, max_states=None))]
fn optimal_ranges(
    inst: &Instance,
    max_states: Option<u128>,
    py: Python<'_>,
) -> PyResult<(Vec<f64>, u64)> {
    let budget = match max_states {
        Some(max_states) => OracleBudget {
            max_points: 64,
            max_states,
        },
        None => OracleBudget::default(),
    };
    let (ranges, total) = py
        .detach(|| optimal_assignment(&inst.inner, &budget))
        .map_err(value_error)?;
    Ok((inst.ranges_out(ranges.as_slice()), total))
}

/// Total interference of an assignment: the number of directed
/// communication edges it induces.
#[pyfunction]
fn total_interference(inst: &Instance, ranges: Vec<f64>) -> PyResult<u64> {
    total_interference_core(&inst.inner, &inst.ranges_in(ranges)?).map_err(value_error)
}

/// Number of stations whose transmissions point p receives.
#[pyfunction]
fn receiver_interference(inst: &Instance, ranges: Vec<f64>, p: usize) -> PyResult<u64> {
    let idx = inst.index_in(p)?;
    receiver_interference_core(&inst.inner, &inst.ranges_in(ranges)?, idx).map_err(value_error)
}

/// Number of stations point p's transmission reaches.
#[pyfunction]
fn sender_interference(inst: &Instance, ranges: Vec<f64>, p: usize) -> PyResult<u64> {
    let idx = inst.index_in(p)?;
    sender_interference_core(&inst.inner, &inst.ranges_in(ranges)?, idx).map_err(value_error)
}

/// Whether the assignment's communication graph is strongly connected.
#[pyfunction]
fn is_valid(inst: &Instance, ranges: Vec<f64>) -> PyResult<bool> {
    is_valid_assignment(&inst.inner, &inst.ranges_in(ranges)?).map_err(value_error)
}

/// Directed communication edges induced by an assignment.
#[pyfunction]
fn comm_edges(inst: &Instance, ranges: Vec<f64>) -> PyResult<Vec<(usize, usize)>> {
    let graph = build_comm_graph(&inst.inner, &inst.ranges_in(ranges)?).map_err(value_error)?;
    let positions = inst.positions_out();
    Ok(graph
        .edges()
        .map(|(p, q)| (positions[p], positions[q]))
        .collect())
}

/// Number of stations a transmission from p reaching q interferes with.
#[pyfunction]
fn coverage_weight(inst: &Instance, p: usize, q: usize) -> PyResult<u32> {
    let (p, q) = (inst.index_in(p)?, inst.index_in(q)?);
    coverage_weight_core(&inst.inner, p, q).map_err(value_error)
}

/// The reduction instance for a grid graph: five stations per vertex,
/// arranged so minimum-interference assignments encode Hamiltonian cycles.
#[pyclass(frozen)]
struct Gadget {
    inner: CoreGadget,
}

#[pymethods]
impl Gadget {
    /// Build the gadget for an explicit grid graph.
    #[staticmethod]
    fn from_grid(vertices: Vec<(i64, i64)>, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let grid = GridGraph::new(vertices, edges).map_err(value_error)?;
        Ok(Gadget {
            inner: CoreGadget::from_grid(grid),
        })
    }

    /// Build the gadget for the full w-by-h rectangular grid.
    #[staticmethod]
    fn rectangle(width: usize, height: usize) -> PyResult<Self> {
        let grid = GridGraph::rectangle(width, height).map_err(value_error)?;
        Ok(Gadget {
            inner: CoreGadget::from_grid(grid),
        })
    }

    /// Recognize a planar instance as a gadget, or return None.
    #[staticmethod]
    fn detect(inst: &Instance) -> Option<Self> {
        CoreGadget::from_instance(&inst.inner).map(|inner| Gadget { inner })
    }

    /// The gadget's station layout as a planar instance.
    #[getter]
    fn instance(&self) -> Instance {
        let inner = self.inner.instance().clone();
        let order = (0..inner.len()).collect();
        Instance { inner, order }
    }

    /// Number of grid vertices (five stations each).
    #[getter]
    fn n_sets(&self) -> usize {
        self.inner.n_sets()
    }

    /// Grid edges, as pairs of vertex indices.
    #[getter]
    fn grid_edges(&self) -> Vec<(usize, usize)> {
        self.inner.grid().edges().to_vec()
    }

    /// Encode a Hamiltonian cycle of the grid as a range assignment
    /// with total interference 9 per vertex.
    fn hamiltonian_ranges(&self, cycle: Vec<usize>) -> PyResult<Vec<f64>> {
        let ranges = self
            .inner
            .hamiltonian_assignment(&cycle)
            .map_err(value_error)?;
        Ok(ranges.into_vec())
    }

    /// Decode a minimum-interference assignment back into the Hamiltonian
    /// cycle it encodes. Raises ValueError if the assignment does not
    /// attain the bound in the expected shape.
    fn extract_hamiltonian(&self, ranges: Vec<f64>) -> PyResult<Vec<usize>> {
        let assignment = RangeAssignment::new(ranges).map_err(value_error)?;
        self.inner
            .extract_hamiltonian(&assignment)
            .map_err(|failure| PyValueError::new_err(failure.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Gadget(n_sets={})", self.inner.n_sets())
    }
}

#[pymodule]
fn mtip_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Solution>()?;
    m.add_class::<Approximation>()?;
    m.add_class::<Gadget>()?;
    m.add_function(wrap_pyfunction!(solve_line, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_ranges, m)?)?;
    m.add_function(wrap_pyfunction!(total_interference, m)?)?;
    m.add_function(wrap_pyfunction!(sender_interference, m)?)?;
    m.add_function(wrap_pyfunction!(receiver_interference, m)?)?;
    m.add_function(wrap_pyfunction!(is_valid, m)?)?;
    m.add_function(wrap_pyfunction!(comm_edges, m)?)?;
    m.add_function(wrap_pyfunction!(coverage_weight, m)?)?;
    Ok(())
}
