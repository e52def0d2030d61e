//! JSON interchange for instances, assignments, grid graphs, edge lists,
//! and approximation reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::approx2d::ApproxResult;
use crate::core::{Dimension, Instance, RangeAssignment};
use crate::error::MtipError;
use crate::instances::GridGraph;

#[derive(Debug)]
pub enum IoError {
    /// The text is not well-formed JSON of the expected shape.
    Parse(serde_json::Error),
    /// A field holds a value outside the format's range.
    BadField(String),
    /// The document parsed but fails the type's own validation.
    Invalid(MtipError),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Parse(err) => write!(f, "malformed JSON: {err}"),
            IoError::BadField(msg) => write!(f, "{msg}"),
            IoError::Invalid(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for IoError {}

impl From<serde_json::Error> for IoError {
    fn from(err: serde_json::Error) -> Self {
        IoError::Parse(err)
    }
}

impl From<MtipError> for IoError {
    fn from(err: MtipError) -> Self {
        IoError::Invalid(err)
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    dim: u8,
    points: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct AssignmentDoc {
    ranges: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct GridDoc {
    vertices: Vec<(i64, i64)>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct EdgesDoc<'a> {
    edges: &'a [(usize, usize)],
}

#[derive(Serialize)]
struct ApproxDoc<'a> {
    root: usize,
    total: u64,
    broadcast: u64,
    sink: u64,
    ranges: &'a [f64],
}

/// Parses `{"dim": 1|2, "points": [[x], ...] | [[x, y], ...]}`. Returns the
/// instance plus the input-position-to-stored-index permutation (see
/// [`Instance::from_rows`]); one-dimensional points may arrive unsorted.
pub fn parse_instance(text: &str) -> Result<(Instance, Vec<usize>), IoError> {
    let doc: InstanceDoc = serde_json::from_str(text)?;
    let dim = match doc.dim {
        1 => Dimension::One,
        2 => Dimension::Two,
        other => {
            return Err(IoError::BadField(format!("dim must be 1 or 2, got {other}")));
        }
    };
    Ok(Instance::from_rows(dim, &doc.points)?)
}

pub fn instance_to_json(inst: &Instance) -> String {
    let doc = InstanceDoc {
        dim: inst.dim().width() as u8,
        points: inst.to_rows(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Parses `{"ranges": [r, ...]}`.
pub fn parse_assignment(text: &str) -> Result<RangeAssignment, IoError> {
    let doc: AssignmentDoc = serde_json::from_str(text)?;
    Ok(RangeAssignment::new(doc.ranges)?)
}

pub fn assignment_to_json(ranges: &RangeAssignment) -> String {
    let doc = AssignmentDoc {
        ranges: ranges.as_slice().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// Parses `{"vertices": [[x, y], ...], "edges": [[i, j], ...]}`.
pub fn parse_grid(text: &str) -> Result<GridGraph, IoError> {
    let doc: GridDoc = serde_json::from_str(text)?;
    Ok(GridGraph::new(doc.vertices, doc.edges)?)
}

pub fn grid_to_json(grid: &GridGraph) -> String {
    let doc = GridDoc {
        vertices: grid.vertices().to_vec(),
        edges: grid.edges().to_vec(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn edges_to_json(edges: &[(usize, usize)]) -> String {
    serde_json::to_string_pretty(&EdgesDoc { edges }).expect("plain data serializes")
}

#[derive(Serialize)]
struct SolveDoc<'a> {
    total: u64,
    ranges: &'a [f64],
}

/// Report for an exactly solved instance: the optimum and one assignment
/// attaining it.
pub fn solve_report_to_json(total: u64, ranges: &[f64]) -> String {
    serde_json::to_string_pretty(&SolveDoc { total, ranges }).expect("plain data serializes")
}

pub fn approx_report_to_json(result: &ApproxResult) -> String {
    let doc = ApproxDoc {
        root: result.root,
        total: result.total,
        broadcast: result.broadcast,
        sink: result.sink,
        ranges: result.assignment.as_slice(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}
