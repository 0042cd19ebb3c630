//! Matchings and maximum-cardinality matching in general graphs.

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Self { partner: vec![None; n] }
    }

    /// Builds a matching from vertex pairs, validating it against `g`.
    pub fn from_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut m = Self::empty(g.n());
        for &(u, v) in pairs {
            if u >= g.n() || v >= g.n() {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: g.n() });
            }
            if !g.has_edge(u, v) || m.partner[u].is_some() || m.partner[v].is_some() {
                return Err(GraphError::BadMatching(u));
            }
            m.partner[u] = Some(v);
            m.partner[v] = Some(u);
        }
        Ok(m)
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.partner[v]
    }

    pub fn size(&self) -> usize {
        self.partner.iter().filter(|p| p.is_some()).count() / 2
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(u, p)| p.filter(|&v| u < v).map(|v| (u, v)))
    }

    /// Involution, no fixed points, every pair an edge of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        if self.partner.len() != g.n() {
            return Err(GraphError::BadMatching(0));
        }
        for (u, p) in self.partner.iter().enumerate() {
            if let Some(v) = *p {
                if v == u || v >= g.n() || self.partner[v] != Some(u) || !g.has_edge(u, v) {
                    return Err(GraphError::BadMatching(u));
                }
            }
        }
        Ok(())
    }
}

/// Maximum-cardinality matching (Gabow's blossom algorithm via petgraph).
pub fn maximum_matching(g: &Graph) -> Matching {
    let pg: UnGraph<(), ()> = UnGraph::from_edges(g.edges().map(|(u, v)| (u as u32, v as u32)));
    let mut m = Matching::empty(g.n());
    for (u, v) in petgraph::algo::maximum_matching(&pg).edges() {
        let (u, v) = (u.index(), v.index());
        m.partner[u] = Some(v);
        m.partner[v] = Some(u);
    }
    m
}
