use crate::core::instance::Instance;
use crate::error::MtipError;

/// Coverage weight of the directed edge p -> q: how many points other than p
/// lie within distance |pq| of p, counting q itself and any point tied with
/// it. This is the sender interference p causes by choosing a range that
/// just reaches q, so it always lies in 1..=n-1.
pub fn coverage_weight(inst: &Instance, p: usize, q: usize) -> Result<u32, MtipError> {
    let n = inst.len();
    for idx in [p, q] {
        if idx >= n {
            return Err(MtipError::NodeOutOfRange { index: idx, n });
        }
    }
    if p == q {
        return Err(MtipError::SameEndpoint { index: p });
    }
    let d2 = inst.dist2(p, q);
    Ok((0..n)
        .filter(|&z| z != p && inst.dist2(p, z) <= d2)
        .count() as u32)
}

/// The complete weighted digraph over an instance's points, with coverage
/// weights on every ordered pair. Stored as a dense row-major matrix; the
/// diagonal is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    w: Vec<u32>,
}

impl WeightedDigraph {
    /// Computes all coverage weights in O(n^2 log n): one distance sort per
    /// source, with tied distances sharing the rank of the farthest member
    /// of their tie group.
    pub fn from_instance(inst: &Instance) -> Self {
        let n = inst.len();
        let mut w = vec![0u32; n * n];
        let mut order: Vec<usize> = Vec::with_capacity(n.saturating_sub(1));
        for p in 0..n {
            order.clear();
            order.extend((0..n).filter(|&z| z != p));
            order.sort_by(|&a, &b| inst.dist2(p, a).total_cmp(&inst.dist2(p, b)));
            let mut lo = 0;
            while lo < order.len() {
                let d2 = inst.dist2(p, order[lo]);
                let mut hi = lo + 1;
                while hi < order.len() && inst.dist2(p, order[hi]) == d2 {
                    hi += 1;
                }
                for &q in &order[lo..hi] {
                    w[p * n + q] = hi as u32;
                }
                lo = hi;
            }
        }
        WeightedDigraph { n, w }
    }

    /// Builds a digraph from an explicit square weight matrix; diagonal
    /// entries are ignored.
    pub fn from_matrix(rows: Vec<Vec<u32>>) -> Result<Self, MtipError> {
        let n = rows.len();
        let mut w = Vec::with_capacity(n * n);
        for (index, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MtipError::BadRow {
                    index,
                    expected: n,
                    got: row.len(),
                });
            }
            w.extend_from_slice(row);
        }
        Ok(WeightedDigraph { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, p: usize, q: usize) -> u32 {
        debug_assert_ne!(p, q, "weights are defined on distinct endpoints");
        self.w[p * self.n + q]
    }

    /// The digraph with every edge reversed: weight'(p, q) = weight(q, p).
    pub fn invert(&self) -> Self {
        let n = self.n;
        let mut w = vec![0u32; n * n];
        for p in 0..n {
            for q in 0..n {
                w[q * n + p] = self.w[p * n + q];
            }
        }
        WeightedDigraph { n, w }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> Instance {
        Instance::line(xs).unwrap().0
    }

    #[test]
    fn weights_on_an_uneven_line() {
        let inst = line(&[0.0, 1.0, 3.0]);
        let expect = [[0, 1, 2], [1, 0, 2], [2, 1, 0]];
        let g = WeightedDigraph::from_instance(&inst);
        for p in 0..3 {
            for q in 0..3 {
                if p == q {
                    continue;
                }
                assert_eq!(g.weight(p, q), expect[p][q], "weight({p}, {q})");
                assert_eq!(coverage_weight(&inst, p, q).unwrap(), expect[p][q]);
            }
        }
    }

    #[test]
    fn tied_distances_count_inclusively() {
        // Middle point sees both neighbours at distance 1, so either edge
        // out of it already covers both.
        let inst = line(&[0.0, -1.0, 1.0]);
        let g = WeightedDigraph::from_instance(&inst);
        assert_eq!(g.weight(1, 0), 2);
        assert_eq!(g.weight(1, 2), 2);
        assert_eq!(g.weight(0, 1), 1);
        assert_eq!(g.weight(0, 2), 2);
        assert_eq!(g.weight(2, 1), 1);
        assert_eq!(g.weight(2, 0), 2);
    }

    #[test]
    fn planar_ties_on_the_unit_square() {
        let inst = Instance::plane(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap();
        let g = WeightedDigraph::from_instance(&inst);
        // Each corner's two neighbours tie at distance 1; the diagonal is
        // strictly farther and covers everyone.
        assert_eq!(g.weight(0, 1), 2);
        assert_eq!(g.weight(0, 2), 2);
        assert_eq!(g.weight(0, 3), 3);
    }

    #[test]
    fn coverage_weight_rejects_bad_arguments() {
        let inst = line(&[0.0, 1.0]);
        assert_eq!(
            coverage_weight(&inst, 0, 0),
            Err(MtipError::SameEndpoint { index: 0 })
        );
        assert_eq!(
            coverage_weight(&inst, 0, 5),
            Err(MtipError::NodeOutOfRange { index: 5, n: 2 })
        );
    }

    #[test]
    fn inversion_transposes_and_round_trips() {
        let g = WeightedDigraph::from_matrix(vec![
            vec![0, 3, 1],
            vec![2, 0, 5],
            vec![4, 6, 0],
        ])
        .unwrap();
        let inv = g.invert();
        assert_eq!(inv.weight(1, 0), 3);
        assert_eq!(inv.weight(0, 1), 2);
        assert_eq!(inv.invert(), g);
    }

    #[test]
    fn from_matrix_requires_square_input() {
        let err = WeightedDigraph::from_matrix(vec![vec![0, 1], vec![1]]).unwrap_err();
        assert_eq!(
            err,
            MtipError::BadRow {
                index: 1,
                expected: 2,
                got: 1
            }
        );
    }
}
