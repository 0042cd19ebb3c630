//! Simple undirected graphs, with the cubic-graph machinery used by the
//! labeling pipeline: girth, maximum matching, path decomposition, and
//! random generation of cubic graphs with prescribed girth.

mod generate;
mod girth;
mod matching;
mod paths;

use std::fmt::Write as _;

use thiserror::Error;

pub use generate::{boost_girth, random_cubic, BoostOutcome};
pub use girth::{girth, short_cycle_near, GirthReport};
pub use matching::{maximum_matching, Matching};
pub use paths::{decompose_paths, PathParams, PathSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("empty graph file")]
    Empty,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("a cubic graph needs an even number of at least 4 vertices, got {0}")]
    BadOrder(usize),
    #[error("no simple pairing found after {0} attempts")]
    RetryLimit(usize),
    #[error("matching is inconsistent with the graph at vertex {0}")]
    BadMatching(usize),
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.insert_edge(u, v);
        Ok(())
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.adj[a].binary_search(&b).unwrap_or_else(|p| p);
            self.adj[a].insert(pos, b);
        }
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            if let Ok(pos) = self.adj[a].binary_search(&b) {
                self.adj[a].remove(pos);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|ns| ns.len() == 3)
    }

    pub fn ensure_cubic(&self) -> Result<(), GraphError> {
        match self.adj.iter().enumerate().find(|(_, ns)| ns.len() != 3) {
            Some((vertex, ns)) => Err(GraphError::NotCubic { vertex, degree: ns.len() }),
            None => Ok(()),
        }
    }

    /// Parses the edge-list format: first line `n`, then one `u v` per line.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(GraphError::Empty)?;
        let n: usize = first.parse().map_err(|_| GraphError::Parse {
            line,
            message: format!("expected vertex count, found {first:?}"),
        })?;
        let mut g = Self::empty(n);
        for (line, l) in lines {
            let ids: Vec<&str> = l.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line,
                    message: format!("expected vertex id, found {s:?}"),
                })
            };
            if ids.len() != 2 {
                return Err(GraphError::Parse { line, message: "expected `u v`".into() });
            }
            g.try_add_edge(parse(ids[0])?, parse(ids[1])?)?;
        }
        Ok(g)
    }

    /// Serializes to the edge-list format, edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_edges(a + b, &edges).expect("complete bipartite graph is simple")
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - i+5`.
    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Self::from_edges(10, &edges).expect("Petersen graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    /// Hamiltonian cubic graph from LCF notation: the cycle `0..n` plus a
    /// chord from each `i` to `i + shifts[i % shifts.len()]`.
    pub fn lcf(n: usize, shifts: &[isize]) -> Result<Self, GraphError> {
        let mut g = Self::cycle(n);
        for i in 0..n {
            let j = (i as isize + shifts[i % shifts.len()]).rem_euclid(n as isize) as usize;
            if i < j || !g.has_edge(i, j) {
                g.try_add_edge(i, j)?;
            }
        }
        Ok(g)
    }

    /// Prism over an `n`-cycle: cubic on `2n` vertices, girth 4 for `n >= 4`.
    pub fn prism(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, (i + 1) % n));
            edges.push((n + i, n + (i + 1) % n));
            edges.push((i, n + i));
        }
        Self::from_edges(2 * n, &edges).expect("prism is simple")
    }
}
