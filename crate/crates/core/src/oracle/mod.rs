//! Reference algorithms: exact domination number for small graphs, the
//! greedy baseline, and the seeded Monte Carlo harness.

mod harness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::labeling::LabelingError;

pub use harness::{run_trials, GraphSource, TrialConfig, TrialReport};

/// Largest order accepted by [`exact_domination_number`].
pub const EXACT_MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exact search supports at most {EXACT_MAX_N} vertices, got {0}")]
    TooLarge(usize),
    #[error("seed {seed}: {} vertices left undominated, first {}", undominated.len(), undominated[0])]
    NotDominating { seed: u64, undominated: Vec<usize> },
    #[error("no seeds given")]
    NoSeeds,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub gamma: usize,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
}

struct Search {
    closed: Vec<u64>,
    full: u64,
    max_closed: u32,
    best: u64,
    best_size: u32,
    nodes: u64,
}

impl Search {
    fn go(&mut self, dominated: u64, chosen: u64, size: u32) {
        self.nodes += 1;
        if dominated == self.full {
            if size < self.best_size {
                self.best_size = size;
                self.best = chosen;
            }
            return;
        }
        let open = (self.full & !dominated).count_ones();
        if size + open.div_ceil(self.max_closed) >= self.best_size {
            return;
        }
        // Some vertex of N[u] must be chosen.
        let u = (self.full & !dominated).trailing_zeros() as usize;
        let mut options: Vec<(u32, usize)> = bits(self.closed[u])
            .map(|w| ((self.closed[w] & !dominated).count_ones(), w))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, w) in options {
            self.go(dominated | self.closed[w], chosen | 1 << w, size + 1);
        }
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            i
        })
    })
}

/// Domination number by branch and bound on the lowest undominated vertex,
/// pruned with `⌈undominated / (Δ + 1)⌉`.
pub fn exact_domination_number(g: &Graph) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > EXACT_MAX_N {
        return Err(OracleError::TooLarge(n));
    }
    if n == 0 {
        return Ok(OracleResult { gamma: 0, witness: Vec::new(), nodes_explored: 0 });
    }
    let closed: Vec<u64> =
        (0..n).map(|v| g.neighbors(v).iter().fold(1u64 << v, |m, &w| m | 1 << w)).collect();
    let greedy = greedy_domination(g);
    let mut search = Search {
        max_closed: closed.iter().map(|m| m.count_ones()).max().unwrap_or(1),
        full: (1u64 << n) - 1,
        best: greedy.iter().fold(0, |m, &v| m | 1 << v),
        best_size: greedy.len() as u32,
        closed,
        nodes: 0,
    };
    search.go(0, 0, 0);
    Ok(OracleResult {
        gamma: search.best_size as usize,
        witness: bits(search.best).collect(),
        nodes_explored: search.nodes,
    })
}

/// Repeatedly takes the vertex dominating the most undominated vertices,
/// lowest id on ties. Returns sorted ids.
pub fn greedy_domination(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    while left > 0 {
        let gain = |v: usize| {
            usize::from(!dominated[v]) + g.neighbors(v).iter().filter(|&&w| !dominated[w]).count()
        };
        let best = (0..n).max_by(|&a, &b| gain(a).cmp(&gain(b)).then(b.cmp(&a))).expect("n > 0");
        chosen.push(best);
        for v in std::iter::once(best).chain(g.neighbors(best).iter().copied()) {
            if !dominated[v] {
                dominated[v] = true;
                left -= 1;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}
