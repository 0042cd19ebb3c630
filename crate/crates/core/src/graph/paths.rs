//! Decomposition of a cubic graph minus a matching into short paths.
//!
//! Removing the unmatched vertices and the matching edges leaves a graph of
//! maximum degree 2, i.e. disjoint paths and cycles. Cycles are cut open at
//! their lowest vertex and every component longer than `max_len` is split
//! into near-equal consecutive segments. Each covered vertex keeps its
//! matching partner as its mate; that edge is never a path edge.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathParams {
    /// Girth parameter the window was derived from.
    pub girth: usize,
    pub k: usize,
    /// `max(1, ⌈g / 4K⌉)`
    pub min_len: usize,
    /// `max(min_len, ⌈g / 2K⌉ - 1)`
    pub max_len: usize,
}

impl PathParams {
    pub fn new(girth: usize, k: usize) -> Self {
        let k = k.max(1);
        let min_len = girth.div_ceil(4 * k).max(1);
        let max_len = (girth.div_ceil(2 * k).saturating_sub(1)).max(min_len);
        Self { girth, k, min_len, max_len }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
    /// Mate of each covered vertex, `None` for uncovered ones.
    mate: Vec<Option<usize>>,
    /// `(path index, position)` of each covered vertex.
    location: Vec<Option<(usize, usize)>>,
    pub uncovered: Vec<usize>,
    pub params: PathParams,
    /// Components of the graph left after removing the matching.
    pub components: usize,
    /// Paths with fewer than `min_len` vertices.
    pub short_paths: usize,
}

impl PathSystem {
    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn location(&self, v: usize) -> Option<(usize, usize)> {
        self.location[v]
    }

    pub fn covered(&self) -> usize {
        self.n() - self.uncovered.len()
    }

    /// Checks disjointness, coverage, the mate involution, path adjacency,
    /// mate edges off the paths, and the length cap.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut seen = vec![false; g.n()];
        for (pi, path) in self.paths.iter().enumerate() {
            if path.is_empty() || path.len() > self.params.max_len {
                return Err(format!("path {pi} has {} vertices", path.len()));
            }
            for (pos, &v) in path.iter().enumerate() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(format!("vertex {v} on two paths"));
                }
                if self.location[v] != Some((pi, pos)) {
                    return Err(format!("vertex {v} has a stale location"));
                }
            }
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("path {pi} uses non-edge {}-{}", w[0], w[1]));
                }
                if self.mate[w[0]] == Some(w[1]) {
                    return Err(format!("mate edge {}-{} lies on path {pi}", w[0], w[1]));
                }
            }
        }
        for v in 0..g.n() {
            match self.mate[v] {
                Some(u) => {
                    if !seen[v] || u == v || self.mate[u] != Some(v) || !g.has_edge(u, v) {
                        return Err(format!("bad mate at vertex {v}"));
                    }
                }
                None => {
                    if seen[v] || !self.uncovered.contains(&v) {
                        return Err(format!("vertex {v} covered without a mate"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn split(seq: &[usize], max_len: usize, out: &mut Vec<Vec<usize>>) {
    let parts = seq.len().div_ceil(max_len).max(1);
    let base = seq.len() / parts;
    let extra = seq.len() % parts;
    let mut start = 0;
    for i in 0..parts {
        let len = base + usize::from(i < extra);
        out.push(seq[start..start + len].to_vec());
        start += len;
    }
}

/// Splits `g` minus the matching `m` into paths of at most
/// `PathParams::new(girth, k).max_len` vertices.
pub fn decompose_paths(
    g: &Graph,
    m: &Matching,
    girth: usize,
    k: usize,
) -> Result<PathSystem, GraphError> {
    g.ensure_cubic()?;
    m.validate(g)?;
    let params = PathParams::new(girth, k);
    let n = g.n();
    let mate: Vec<Option<usize>> = (0..n).map(|v| m.partner(v)).collect();
    let uncovered: Vec<usize> = (0..n).filter(|&v| mate[v].is_none()).collect();

    // Remainder adjacency: covered neighbours other than the mate.
    let rest: Vec<Vec<usize>> = (0..n)
        .map(|v| match mate[v] {
            None => Vec::new(),
            Some(p) => {
                g.neighbors(v).iter().copied().filter(|&w| w != p && mate[w].is_some()).collect()
            }
        })
        .collect();

    let mut visited = vec![false; n];
    let mut components = Vec::new();
    let walk = |start: usize, first: Option<usize>, visited: &mut Vec<bool>| {
        let mut seq = vec![start];
        visited[start] = true;
        let mut prev = start;
        let mut cur = first;
        while let Some(c) = cur {
            if visited[c] {
                break;
            }
            visited[c] = true;
            seq.push(c);
            cur = rest[c].iter().copied().find(|&w| w != prev && !visited[w]);
            prev = c;
        }
        seq
    };
    // Paths first, from their lower-numbered end.
    for v in 0..n {
        if mate[v].is_some() && !visited[v] && rest[v].len() <= 1 {
            let seq = walk(v, rest[v].first().copied(), &mut visited);
            components.push(seq);
        }
    }
    // What is left are cycles; open each at its lowest vertex, heading to
    // the lower neighbour.
    for v in 0..n {
        if mate[v].is_some() && !visited[v] {
            let next = rest[v].iter().copied().min();
            components.push(walk(v, next, &mut visited));
        }
    }

    let mut paths = Vec::new();
    for comp in &components {
        split(comp, params.max_len, &mut paths);
    }
    let mut location = vec![None; n];
    for (pi, path) in paths.iter().enumerate() {
        for (pos, &v) in path.iter().enumerate() {
            location[v] = Some((pi, pos));
        }
    }
    let short_paths = paths.iter().filter(|p| p.len() < params.min_len).count();

    Ok(PathSystem {
        paths,
        mate,
        location,
        uncovered,
        params,
        components: components.len(),
        short_paths,
    })
}
