use std::fmt;

/// Errors shared by the solver library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MtipError {
    /// An instance must contain at least one point.
    EmptyInstance,
    /// A coordinate or range was NaN or infinite.
    NonFinite { index: usize },
    /// Two points of an instance coincide exactly.
    DuplicatePoint { first: usize, second: usize },
    /// A raw coordinate row does not match the declared dimension.
    BadRow { index: usize, expected: usize, got: usize },
    /// A range is negative.
    NegativeRange { index: usize },
    /// Assignment length differs from the instance point count.
    LengthMismatch { points: usize, ranges: usize },
    /// A node index is outside the graph.
    NodeOutOfRange { index: usize, n: usize },
    /// An operation on a directed edge received identical endpoints.
    SameEndpoint { index: usize },
    /// The operation requires a one-dimensional instance.
    NotOneDimensional,
    /// An interval [lo, hi] is not contained in 0..n or has lo > hi.
    BadInterval { lo: usize, hi: usize, n: usize },
    /// Indices violate the required order k <= i < j.
    BadIndexOrder { k: usize, i: usize, j: usize },
    /// Instance is larger than the brute-force point budget.
    TooManyPoints { n: usize, max: usize },
    /// The enumeration would exceed the brute-force state budget.
    SearchTooLarge { states: u128, max: u128 },
    /// A grid graph failed validation.
    BadGridGraph(String),
    /// A vertex sequence is not a Hamiltonian cycle of the grid graph.
    NotHamiltonianCycle(String),
}

impl fmt::Display for MtipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MtipError::EmptyInstance => write!(f, "instance has no points"),
            MtipError::NonFinite { index } => {
                write!(f, "non-finite value at index {index}")
            }
            MtipError::DuplicatePoint { first, second } => {
                write!(f, "duplicate point: indices {first} and {second} coincide")
            }
            MtipError::BadRow {
                index,
                expected,
                got,
            } => write!(
                f,
                "point {index} has {got} coordinates, expected {expected}"
            ),
            MtipError::NegativeRange { index } => {
                write!(f, "negative range at index {index}")
            }
            MtipError::LengthMismatch { points, ranges } => {
                write!(f, "{points} points but {ranges} ranges")
            }
            MtipError::NodeOutOfRange { index, n } => {
                write!(f, "node index {index} out of range for {n} nodes")
            }
            MtipError::SameEndpoint { index } => {
                write!(f, "edge endpoints coincide at index {index}")
            }
            MtipError::NotOneDimensional => {
                write!(f, "operation requires a one-dimensional instance")
            }
            MtipError::BadInterval { lo, hi, n } => {
                write!(f, "invalid interval [{lo}, {hi}] for {n} points")
            }
            MtipError::BadIndexOrder { k, i, j } => {
                write!(f, "indices must satisfy k <= i < j, got k={k}, i={i}, j={j}")
            }
            MtipError::TooManyPoints { n, max } => {
                write!(f, "{n} points exceed the brute-force budget of {max}")
            }
            MtipError::SearchTooLarge { states, max } => {
                write!(f, "search needs {states} states, budget is {max}")
            }
            MtipError::BadGridGraph(reason) => write!(f, "invalid grid graph: {reason}"),
            MtipError::NotHamiltonianCycle(reason) => {
                write!(f, "not a Hamiltonian cycle: {reason}")
            }
        }
    }
}

impl std::error::Error for MtipError {}
