use crate::error::MtipError;

/// Ambient dimension of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    One,
    Two,
}

impl Dimension {
    /// Coordinates per point.
    pub fn width(self) -> usize {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
        }
    }
}

/// A validated set of distinct points with finite coordinates.
///
/// One-dimensional instances are stored sorted by x, so index order equals
/// left-to-right order; constructors report how input positions map to the
/// stored order. Points of two-dimensional instances keep their input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    dim: Dimension,
    pts: Vec<(f64, f64)>,
}

impl Instance {
    /// Builds an instance from raw coordinate rows, checking finiteness,
    /// row width, and distinctness. Returns the instance together with the
    /// permutation `perm`, where `perm[i]` is the stored index of input row
    /// `i` (the identity for two-dimensional input).
    pub fn from_rows(dim: Dimension, rows: &[Vec<f64>]) -> Result<(Self, Vec<usize>), MtipError> {
        if rows.is_empty() {
            return Err(MtipError::EmptyInstance);
        }
        let width = dim.width();
        let mut pts = Vec::with_capacity(rows.len());
        for (index, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(MtipError::BadRow {
                    index,
                    expected: width,
                    got: row.len(),
                });
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(MtipError::NonFinite { index });
            }
            let y = if width == 2 { row[1] } else { 0.0 };
            pts.push((row[0], y));
        }

        // Sort a view of the indices; for 1-d input this defines the stored
        // order, for 2-d it only serves the duplicate scan.
        let mut by_coord: Vec<usize> = (0..pts.len()).collect();
        by_coord.sort_by(|&a, &b| {
            pts[a]
                .0
                .total_cmp(&pts[b].0)
                .then(pts[a].1.total_cmp(&pts[b].1))
        });
        for pair in by_coord.windows(2) {
            if pts[pair[0]] == pts[pair[1]] {
                let first = pair[0].min(pair[1]);
                let second = pair[0].max(pair[1]);
                return Err(MtipError::DuplicatePoint { first, second });
            }
        }

        match dim {
            Dimension::One => {
                let mut perm = vec![0usize; pts.len()];
                for (stored, &orig) in by_coord.iter().enumerate() {
                    perm[orig] = stored;
                }
                let sorted = by_coord.iter().map(|&i| pts[i]).collect();
                Ok((
                    Instance {
                        dim,
                        pts: sorted,
                    },
                    perm,
                ))
            }
            Dimension::Two => {
                let perm = (0..pts.len()).collect();
                Ok((Instance { dim, pts }, perm))
            }
        }
    }

    /// One-dimensional instance from x coordinates; see [`Instance::from_rows`].
    pub fn line(xs: &[f64]) -> Result<(Self, Vec<usize>), MtipError> {
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![x]).collect();
        Self::from_rows(Dimension::One, &rows)
    }

    /// Two-dimensional instance from (x, y) pairs.
    pub fn plane(pts: &[(f64, f64)]) -> Result<Self, MtipError> {
        let rows: Vec<Vec<f64>> = pts.iter().map(|&(x, y)| vec![x, y]).collect();
        Ok(Self::from_rows(Dimension::Two, &rows)?.0)
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// x coordinate of point `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.pts[i].0
    }

    pub fn point(&self, i: usize) -> (f64, f64) {
        self.pts[i]
    }

    /// Exact squared distance between points `i` and `j`. All distance
    /// comparisons in the crate go through squared values so that ties are
    /// decided exactly, never through an epsilon.
    pub fn dist2(&self, i: usize, j: usize) -> f64 {
        let (xi, yi) = self.pts[i];
        let (xj, yj) = self.pts[j];
        let dx = xi - xj;
        let dy = yi - yj;
        dx * dx + dy * dy
    }

    /// Coordinate rows in stored order, shaped for serialization.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        match self.dim {
            Dimension::One => self.pts.iter().map(|&(x, _)| vec![x]).collect(),
            Dimension::Two => self.pts.iter().map(|&(x, y)| vec![x, y]).collect(),
        }
    }
}

/// A transmission range per point, finite and non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeAssignment {
    ranges: Vec<f64>,
}

impl RangeAssignment {
    pub fn new(ranges: Vec<f64>) -> Result<Self, MtipError> {
        for (index, &r) in ranges.iter().enumerate() {
            if !r.is_finite() {
                return Err(MtipError::NonFinite { index });
            }
            if r < 0.0 {
                return Err(MtipError::NegativeRange { index });
            }
        }
        Ok(RangeAssignment { ranges })
    }

    /// The same range for every one of `n` points.
    pub fn uniform(n: usize, r: f64) -> Result<Self, MtipError> {
        Self::new(vec![r; n])
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.ranges[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.ranges
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.ranges
    }
}
