use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::hypergraph::Hypergraph;
use crate::path::{BergeCycle, BergePath};

use super::rotation::explore;
use super::{Outcome, SearchBudget};

/// Closure limit per rotation round.
const ROUND_LIMIT: usize = 256;

/// Grows a path from its start, rotating to expose a new start whenever the
/// current one is stuck, and closes it when some rotated start shares an
/// unused edge with the fixed end. Never proves absence.
pub fn extend_and_close(h: &Hypergraph, budget: &SearchBudget) -> Outcome {
    let n = h.n();
    if n < 3 || h.edge_count() < n {
        return Outcome::Unknown;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let shadow = h.shadow();
    let mut spent = 0u64;
    let attempts = n.max(4);
    for _ in 0..attempts {
        if spent >= budget.max_nodes {
            break;
        }
        let v0 = rng.gen_range(0..n);
        let mut path = BergePath::new(vec![v0], Vec::new());
        loop {
            if path.len() == n {
                if let Some(c) = close(h, &path, &mut spent) {
                    return Outcome::Cycle(c);
                }
                break;
            }
            if let Some(next) = extend(h, &shadow, &path, &mut rng) {
                path = next;
                continue;
            }
            spent += ROUND_LIMIT as u64;
            let grown = explore(h, &path, ROUND_LIMIT)
                .into_values()
                .find_map(|q| extend(h, &shadow, &q, &mut rng));
            match grown {
                Some(next) if spent < budget.max_nodes => path = next,
                _ => break,
            }
        }
    }
    Outcome::Unknown
}

/// Prepends an unvisited neighbor of the start through an unused edge.
fn extend(
    h: &Hypergraph,
    shadow: &[VertexSet],
    path: &BergePath,
    rng: &mut ChaCha8Rng,
) -> Option<BergePath> {
    let visited = path.vertex_set();
    let used: HashSet<usize> = path.edges.iter().copied().collect();
    let start = path.start();
    let mut options: Vec<(usize, usize)> = Vec::new();
    for &e in h.incident_edges(start) {
        if used.contains(&e) {
            continue;
        }
        for u in h.edge(e).difference(visited).iter() {
            options.push((u, e));
        }
    }
    if options.is_empty() {
        return None;
    }
    options.shuffle(rng);
    let unvisited = h.vertices().difference(visited);
    let &(u, e) = options
        .iter()
        .min_by_key(|(u, e)| (shadow[*u].intersection(unvisited).len(), h.edge(*e).len()))?;
    let mut vertices = Vec::with_capacity(path.len() + 1);
    vertices.push(u);
    vertices.extend_from_slice(&path.vertices);
    let mut edges = Vec::with_capacity(path.edges.len() + 1);
    edges.push(e);
    edges.extend_from_slice(&path.edges);
    Some(BergePath::new(vertices, edges))
}

fn close(h: &Hypergraph, path: &BergePath, spent: &mut u64) -> Option<BergeCycle> {
    for p in [path.clone(), path.reversed()] {
        *spent += ROUND_LIMIT as u64;
        for q in explore(h, &p, ROUND_LIMIT).into_values() {
            let used: HashSet<usize> = q.edges.iter().copied().collect();
            let (a, b) = (q.start(), q.end());
            let closing = h
                .incident_edges(a)
                .iter()
                .copied()
                .find(|&e| !used.contains(&e) && h.edge(e).contains(b));
            if let Some(e) = closing {
                let mut edges = q.edges.clone();
                edges.push(e);
                return Some(BergeCycle::new(q.vertices.clone(), edges));
            }
        }
    }
    None
}
