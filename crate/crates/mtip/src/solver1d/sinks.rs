use crate::core::WeightedDigraph;
use crate::error::MtipError;

/// Which end of an interval the sink sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinkSide {
    Left,
    Right,
}

/// Optimal sink-tree costs for every interval of a line of points.
///
/// For collinear points indexed left to right, `s_left(i, j)` is the cheapest
/// spanning tree on points i..=j in which every node has a directed path to
/// point i, and `s_right(i, j)` the same with the sink at j. Weights come
/// from the digraph the tables were built from, so an interval keeps the
/// coverage weights of the full line it was cut from.
///
/// The recurrences split on the tree edge leaving the far endpoint: the
/// rightmost point of a left-sinking interval attaches to some k inside the
/// left part, which splits the interval into a left-sinking prefix i..=k and
/// a right-sinking remainder k+1..=j (whose sink j then hops to k), and
/// symmetrically for right-sinking intervals. Each cell takes a linear scan
/// over k, giving O(n^3) time for all cells.
#[derive(Debug, Clone)]
pub struct SinkTables {
    n: usize,
    s_left: Vec<u64>,
    s_right: Vec<u64>,
    choice_left: Vec<u32>,
    choice_right: Vec<u32>,
}

impl SinkTables {
    pub fn build(g: &WeightedDigraph) -> SinkTables {
        let n = g.n();
        let mut s_left = vec![0u64; n * n];
        let mut s_right = vec![0u64; n * n];
        let mut choice_left = vec![u32::MAX; n * n];
        let mut choice_right = vec![u32::MAX; n * n];
        for d in 1..n {
            for i in 0..n - d {
                let j = i + d;
                let mut best = u64::MAX;
                let mut arg = i;
                for k in i..j {
                    let cost =
                        s_left[i * n + k] + u64::from(g.weight(j, k)) + s_right[(k + 1) * n + j];
                    if cost < best {
                        best = cost;
                        arg = k;
                    }
                }
                s_left[i * n + j] = best;
                choice_left[i * n + j] = arg as u32;

                let mut best = u64::MAX;
                let mut arg = j;
                for k in i + 1..=j {
                    let cost =
                        s_left[i * n + k - 1] + u64::from(g.weight(i, k)) + s_right[k * n + j];
                    if cost < best {
                        best = cost;
                        arg = k;
                    }
                }
                s_right[i * n + j] = best;
                choice_right[i * n + j] = arg as u32;
            }
        }
        SinkTables {
            n,
            s_left,
            s_right,
            choice_left,
            choice_right,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, i: usize, j: usize) -> Result<(), MtipError> {
        if i > j || j >= self.n {
            return Err(MtipError::BadInterval {
                lo: i,
                hi: j,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Cheapest sink tree on i..=j with the sink at i.
    pub fn s_left(&self, i: usize, j: usize) -> Result<u64, MtipError> {
        self.check(i, j)?;
        Ok(self.s_left[i * self.n + j])
    }

    /// Cheapest sink tree on i..=j with the sink at j.
    pub fn s_right(&self, i: usize, j: usize) -> Result<u64, MtipError> {
        self.check(i, j)?;
        Ok(self.s_right[i * self.n + j])
    }

    pub(crate) fn s_left_raw(&self, i: usize, j: usize) -> u64 {
        self.s_left[i * self.n + j]
    }

    pub(crate) fn s_right_raw(&self, i: usize, j: usize) -> u64 {
        self.s_right[i * self.n + j]
    }

    /// The edges of an optimal sink tree on i..=j, following the stored
    /// split points. Each non-sink node appears as the source of exactly
    /// one edge.
    pub fn sink_tree_edges(
        &self,
        i: usize,
        j: usize,
        side: SinkSide,
    ) -> Result<Vec<(usize, usize)>, MtipError> {
        self.check(i, j)?;
        let n = self.n;
        let mut edges = Vec::with_capacity(j - i);
        let mut stack = vec![(i, j, side)];
        while let Some((lo, hi, side)) = stack.pop() {
            if lo == hi {
                continue;
            }
            match side {
                SinkSide::Left => {
                    let k = self.choice_left[lo * n + hi] as usize;
                    edges.push((hi, k));
                    stack.push((lo, k, SinkSide::Left));
                    stack.push((k + 1, hi, SinkSide::Right));
                }
                SinkSide::Right => {
                    let k = self.choice_right[lo * n + hi] as usize;
                    edges.push((lo, k));
                    stack.push((lo, k - 1, SinkSide::Left));
                    stack.push((k, hi, SinkSide::Right));
                }
            }
        }
        Ok(edges)
    }
}
