use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GirthReport {
    /// Length of a shortest cycle; `None` for forests.
    pub girth: Option<usize>,
    /// A cycle of that length, as a vertex sequence.
    pub witness: Vec<usize>,
}

const UNSEEN: usize = usize::MAX;

/// Reusable BFS state; reset touches only visited vertices.
pub(crate) struct Bfs {
    dist: Vec<usize>,
    parent: Vec<usize>,
    touched: Vec<usize>,
    queue: std::collections::VecDeque<usize>,
}

impl Bfs {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            dist: vec![UNSEEN; n],
            parent: vec![UNSEEN; n],
            touched: Vec::new(),
            queue: Default::default(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = UNSEEN;
            self.parent[v] = UNSEEN;
        }
        self.touched.clear();
        self.queue.clear();
    }

    /// Shortest closed walk `root ~> u - w ~> root` closed by a non-tree
    /// edge, among those shorter than `bound`. Returns its length and the
    /// closing edge. Every cycle through `root` of length `L` yields such a
    /// walk of length at most `L`, and every such walk contains a cycle.
    fn closing_edge(&mut self, g: &Graph, root: usize, bound: usize) -> Option<(usize, usize, usize)> {
        self.reset();
        self.dist[root] = 0;
        self.touched.push(root);
        self.queue.push_back(root);
        let mut best: Option<(usize, usize, usize)> = None;
        let mut limit = bound;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            if 2 * du >= limit {
                break;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == UNSEEN {
                    self.dist[w] = du + 1;
                    self.parent[w] = u;
                    self.touched.push(w);
                    self.queue.push_back(w);
                } else if self.parent[u] != w {
                    let len = du + self.dist[w] + 1;
                    if len < limit {
                        limit = len;
                        best = Some((len, u, w));
                    }
                }
            }
        }
        best
    }

    /// Simple cycle through the closing edge `u - w`, via the lowest common
    /// ancestor in the BFS tree.
    fn extract_cycle(&self, u: usize, w: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, w);
        let mut left = vec![a];
        let mut right = vec![b];
        while self.dist[a] > self.dist[b] {
            a = self.parent[a];
            left.push(a);
        }
        while self.dist[b] > self.dist[a] {
            b = self.parent[b];
            right.push(b);
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            left.push(a);
            right.push(b);
        }
        // Both end at the ancestor: ancestor ~> u, then w ~> (child of ancestor).
        right.pop();
        left.reverse();
        left.extend(right);
        left
    }

    pub(crate) fn short_cycle(&mut self, g: &Graph, root: usize, bound: usize) -> Option<Vec<usize>> {
        self.closing_edge(g, root, bound).map(|(_, u, w)| self.extract_cycle(u, w))
    }
}

/// Shortest cycle by breadth-first search from every vertex, each search
/// stopping once no shorter cycle can close. Roots run in parallel.
pub fn girth(g: &Graph) -> GirthReport {
    let n = g.n();
    let best = (0..n)
        .into_par_iter()
        .map_init(
            || Bfs::new(n),
            |bfs, root| bfs.closing_edge(g, root, usize::MAX).map(|(len, _, _)| (len, root)),
        )
        .flatten()
        .min();
    match best {
        None => GirthReport { girth: None, witness: Vec::new() },
        Some((len, root)) => {
            let mut bfs = Bfs::new(n);
            let (_, u, w) = bfs.closing_edge(g, root, len + 1).expect("cycle found before");
            let witness = bfs.extract_cycle(u, w);
            debug_assert_eq!(witness.len(), len);
            GirthReport { girth: Some(len), witness }
        }
    }
}

/// Some cycle shorter than `bound` within distance `bound / 2` of `root`,
/// if one exists. Finds one whenever a cycle through `root` is shorter
/// than `bound`.
pub fn short_cycle_near(g: &Graph, root: usize, bound: usize) -> Option<Vec<usize>> {
    Bfs::new(g.n()).short_cycle(g, root, bound)
}

/// BFS distances from `root`, capped at `cap` (vertices farther away get
/// `cap`).
pub(crate) fn capped_distances(g: &Graph, root: usize, cap: usize, out: &mut Vec<(usize, usize)>) {
    out.clear();
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::new();
    seen.insert(root);
    queue.push_back((root, 0));
    while let Some((u, d)) = queue.pop_front() {
        out.push((u, d));
        if d + 1 >= cap {
            continue;
        }
        for &w in g.neighbors(u) {
            if seen.insert(w) {
                queue.push_back((w, d + 1));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_cycle(g: &Graph, c: &[usize]) {
        let mut sorted = c.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), c.len(), "repeated vertex in {c:?}");
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]), "{c:?}");
        }
    }

    #[test]
    fn small_girths() {
        for (g, want) in [
            (Graph::complete(4), 3),
            (Graph::petersen(), 5),
            (Graph::complete_bipartite(3, 3), 4),
            (Graph::prism(6), 4),
            (Graph::cycle(9), 9),
        ] {
            let r = girth(&g);
            assert_eq!(r.girth, Some(want));
            assert_eq!(r.witness.len(), want);
            assert_cycle(&g, &r.witness);
        }
    }

    #[test]
    fn trees_have_infinite_girth() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(girth(&g), GirthReport { girth: None, witness: vec![] });
        assert_eq!(girth(&Graph::empty(3)).girth, None);
    }

    #[test]
    fn local_search_respects_bound() {
        let g = Graph::petersen();
        assert!(short_cycle_near(&g, 0, 5).is_none());
        let c = short_cycle_near(&g, 0, 6).unwrap();
        assert_eq!(c.len(), 5);
        assert_cycle(&g, &c);
    }
}
