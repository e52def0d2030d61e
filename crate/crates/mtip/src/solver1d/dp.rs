use crate::core::{Instance, WeightedDigraph};
use crate::solver1d::sinks::SinkTables;

/// The optimal-assignment recursion over a line of points.
///
/// State (i, k) says: points 0..i are fully handled, point i already pays
/// for a left range reaching point k (k == i meaning left range zero), and
/// `m(i, k)` is the cheapest way to finish. A step picks the next anchor:
/// j > i is the first point i's right range reaches, points i+1..j-1 sink
/// left into i, and some t >= j becomes the new anchor after the block
/// j..=t sinks right into t and t pays a left range back to j-1. Point i's
/// right range only costs the amount by which reaching j exceeds what its
/// left range already pays, which is the `delta` below.
///
/// `c(j)` bundles the anchor hand-over (the minimisation over t); it does
/// not depend on the current row and is recomputed for each row from rows
/// below rather than cached, keeping every cell a plain function of the
/// tables. Rows are filled bottom-up from the rightmost point, whose row is
/// all zeros; the optimum over the whole line is m(0, 0).
#[derive(Debug, Clone)]
pub struct MtipTables {
    n: usize,
    m: Vec<u64>,
    choice_j: Vec<u32>,
    choice_t: Vec<u32>,
}

impl MtipTables {
    pub fn build(inst: &Instance, g: &WeightedDigraph, sinks: &SinkTables) -> MtipTables {
        let n = inst.len();
        let mut m = vec![0u64; n * n];
        let mut choice_j = vec![u32::MAX; n * n];
        let mut choice_t = vec![u32::MAX; n * n];
        let mut c_cost = vec![u64::MAX; n];
        let mut c_choice = vec![u32::MAX; n];
        for i in (0..n.saturating_sub(1)).rev() {
            // c(j): cheapest way to sink a block j..=t rightwards into a new
            // anchor t that then pays a left range back to j-1.
            for j in i + 1..n {
                let mut best = u64::MAX;
                let mut arg = j;
                for t in j..n {
                    let cost = sinks.s_right_raw(j, t)
                        + u64::from(g.weight(t, j - 1))
                        + m[t * n + j - 1];
                    if cost < best {
                        best = cost;
                        arg = t;
                    }
                }
                c_cost[j] = best;
                c_choice[j] = arg as u32;
            }
            for k in 0..=i {
                let mut best = u64::MAX;
                let mut arg = i + 1;
                for j in i + 1..n {
                    let delta = if k == i {
                        u64::from(g.weight(i, j))
                    } else if inst.dist2(i, j) > inst.dist2(i, k) {
                        u64::from(g.weight(i, j) - g.weight(i, k))
                    } else {
                        0
                    };
                    let cost = delta + sinks.s_left_raw(i, j - 1) + c_cost[j];
                    if cost < best {
                        best = cost;
                        arg = j;
                    }
                }
                m[i * n + k] = best;
                choice_j[i * n + k] = arg as u32;
                choice_t[i * n + k] = c_choice[arg];
            }
        }
        MtipTables {
            n,
            m,
            choice_j,
            choice_t,
        }
    }

    /// Minimum total interference over the whole line.
    pub fn optimum(&self) -> u64 {
        if self.n == 0 {
            return 0;
        }
        self.m[0]
    }

    pub(crate) fn step(&self, i: usize, k: usize) -> (usize, usize) {
        let j = self.choice_j[i * self.n + k] as usize;
        let t = self.choice_t[i * self.n + k] as usize;
        (j, t)
    }
}
