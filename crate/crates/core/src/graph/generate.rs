//! Random cubic graphs from the pairing model, and a local edge-switching
//! search that removes short cycles.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::girth::{capped_distances, Bfs};
use super::{girth, Graph, GraphError};

const PAIRING_ATTEMPTS: usize = 1000;
const CANDIDATES: usize = 32;

/// Uniform random simple cubic graph on `n` vertices: random perfect
/// matchings of `3n` points, rejected until simple.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 4 || n % 2 == 1 {
        return Err(GraphError::BadOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut g = Graph::empty(n);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.insert_edge(u, v);
        }
        return Ok(g);
    }
    Err(GraphError::RetryLimit(PAIRING_ATTEMPTS))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoostOutcome {
    #[serde(skip)]
    pub graph: Graph,
    /// Girth of the returned graph, `None` if acyclic.
    pub girth: Option<usize>,
    pub target: usize,
    pub swaps: usize,
    /// Repair attempts used, successful or not.
    pub iterations: usize,
    pub reached: bool,
}

/// Raises the girth of a cubic graph towards `target` by switching pairs of
/// edges. Each step takes a cycle shorter than `target`, removes one of its
/// edges `ab` together with a far-away edge `cd`, and reconnects the four
/// endpoints crosswise. Stops after `max_iters` repair attempts.
pub fn boost_girth(
    g: &Graph,
    target: usize,
    seed: u64,
    max_iters: usize,
) -> Result<BoostOutcome, GraphError> {
    g.ensure_cubic()?;
    let n = g.n();
    let mut g = g.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let key = |u: usize, v: usize| (u.min(v), u.max(v));

    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    let mut swaps = 0;
    let mut iterations = 0;
    let cap = target.saturating_sub(1);
    let (mut da, mut db) = (Vec::new(), Vec::new());
    let mut dist: HashMap<usize, usize> = HashMap::new();
    let mut bfs = Bfs::new(n);

    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let Some(cycle) = bfs.short_cycle(&g, v, target) else {
            continue;
        };
        if iterations == max_iters {
            break;
        }
        iterations += 1;
        let i = rng.gen_range(0..cycle.len());
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);

        capped_distances(&g, a, cap, &mut da);
        capped_distances(&g, b, cap, &mut db);
        dist.clear();
        for &(u, d) in da.iter().chain(&db) {
            let e = dist.entry(u).or_insert(d);
            *e = (*e).min(d);
        }
        let far = |u: usize| dist.get(&u).copied().unwrap_or(cap);

        let mut best: Option<(usize, usize, usize)> = None;
        for _ in 0..CANDIDATES {
            let (mut c, mut d) = edges[rng.gen_range(0..edges.len())];
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut c, &mut d);
            }
            if [a, b].contains(&c) || [a, b].contains(&d) || g.has_edge(a, c) || g.has_edge(b, d) {
                continue;
            }
            let score = far(c).min(far(d));
            if best.is_none_or(|(s, _, _)| score > s) {
                best = Some((score, c, d));
            }
        }
        let Some((_, c, d)) = best else {
            queue.push_back(v);
            queued[v] = true;
            continue;
        };

        g.remove_edge(a, b);
        g.remove_edge(c, d);
        g.insert_edge(a, c);
        g.insert_edge(b, d);
        let (iab, icd) = (index.remove(&key(a, b)).unwrap(), index.remove(&key(c, d)).unwrap());
        edges[iab] = key(a, c);
        edges[icd] = key(b, d);
        index.insert(edges[iab], iab);
        index.insert(edges[icd], icd);
        swaps += 1;

        for u in [v, a, b, c, d] {
            if !queued[u] {
                queued[u] = true;
                queue.push_back(u);
            }
        }
    }

    let girth = girth(&g).girth;
    let reached = girth.is_none_or(|len| len >= target);
    Ok(BoostOutcome { graph: g, girth, target, swaps, iterations, reached })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vertices_give_k4() {
        assert_eq!(random_cubic(4, 1).unwrap(), Graph::complete(4));
    }

    #[test]
    fn bad_orders() {
        assert_eq!(random_cubic(5, 0), Err(GraphError::BadOrder(5)));
        assert_eq!(random_cubic(2, 0), Err(GraphError::BadOrder(2)));
    }

    #[test]
    fn deterministic_and_cubic() {
        let a = random_cubic(200, 7).unwrap();
        assert!(a.is_cubic());
        assert_eq!(a, random_cubic(200, 7).unwrap());
        assert_ne!(a, random_cubic(200, 8).unwrap());
    }

    #[test]
    fn boosts_to_girth_seven() {
        let g = random_cubic(1000, 3).unwrap();
        let out = boost_girth(&g, 7, 3, 100_000).unwrap();
        assert!(out.reached);
        assert!(out.graph.is_cubic());
        assert!(out.girth.unwrap() >= 7);
        assert_eq!(out.girth, girth(&out.graph).girth);
    }

    #[test]
    fn impossible_target_hits_the_cap() {
        // No cubic graph on 10 vertices has girth above 5.
        let g = random_cubic(10, 1).unwrap();
        let out = boost_girth(&g, 6, 1, 200).unwrap();
        assert!(!out.reached);
        assert_eq!(out.iterations, 200);
        assert!(out.graph.is_cubic());
    }
}
