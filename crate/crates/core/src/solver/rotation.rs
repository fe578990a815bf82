//! The rotation engine: three path surgeries that move the start of a Berge
//! path while keeping its vertex set and its last vertex, and their closure.
//!
//! With `P = u_1, f_1, u_2, .., f_{t}, u_{t+1}` (positions 1-based):
//!
//! * defining rotation at `i`, when `u_1` lies in `f_i`:
//!   `u_i, f_{i-1}, .., u_1, f_i, u_{i+1}, ..`
//! * non-defining rotation at `i` with an edge `f` off the path containing
//!   `u_1` and `u_{i+1}`: `u_i, f_{i-1}, .., u_1, f, u_{i+1}, ..`
//! * double rotation at `i > j` when `u_1` lies in `f_i` and an edge `f` off
//!   the path contains `u_j` and `u_{i+1}`:
//!   `u_{j+1}, f_{j+1}, .., u_i, f_i, u_1, f_1, .., u_j, f, u_{i+1}, ..`

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::bitset::{PositionSet, VertexSet};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::path::{shift_left, BergePath};

/// Default cap on the number of paths whose rotations are enumerated.
pub const DEFAULT_CLOSURE_LIMIT: usize = 20_000;

/// One rotation, by its parameters on the current path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Defining { i: usize },
    NonDefining { i: usize, f: usize },
    Double { i: usize, j: usize, f: usize },
}

fn inapplicable(msg: impl Into<String>) -> Error {
    Error::RotationInapplicable(msg.into())
}

fn check_off_path(h: &Hypergraph, p: &BergePath, f: usize) -> Result<()> {
    h.try_edge(f)?;
    if p.edges.contains(&f) {
        return Err(inapplicable(format!("edge {f} is already on the path")));
    }
    Ok(())
}

fn check_edge_position(p: &BergePath, i: usize) -> Result<()> {
    if i == 0 || i > p.edges.len() {
        return Err(inapplicable(format!(
            "position {i} outside 1..={}",
            p.edges.len()
        )));
    }
    Ok(())
}

/// `u_i, .., u_1` followed by `u_{i+1}, ..`, with the reversed prefix edges
/// `f_{i-1}, .., f_1`, then `link`, then `f_{i+1}, ..`.
fn reverse_prefix(p: &BergePath, i: usize, link: usize) -> BergePath {
    let mut vertices: Vec<usize> = p.vertices[..i].iter().rev().copied().collect();
    vertices.extend_from_slice(&p.vertices[i..]);
    let mut edges: Vec<usize> = p.edges[..i - 1].iter().rev().copied().collect();
    edges.push(link);
    edges.extend_from_slice(&p.edges[i..]);
    BergePath::new(vertices, edges)
}

pub(crate) fn apply_defining(h: &Hypergraph, p: &BergePath, i: usize) -> Result<BergePath> {
    check_edge_position(p, i)?;
    let fi = p.edge_at(i);
    if !h.edge(fi).contains(p.start()) {
        return Err(inapplicable(format!(
            "start vertex {} is not in edge {fi} at position {i}",
            p.start()
        )));
    }
    Ok(reverse_prefix(p, i, fi))
}

pub(crate) fn apply_nondefining(
    h: &Hypergraph,
    p: &BergePath,
    i: usize,
    f: usize,
) -> Result<BergePath> {
    check_edge_position(p, i)?;
    check_off_path(h, p, f)?;
    let set = h.edge(f);
    if !set.contains(p.start()) || !set.contains(p.at(i + 1)) {
        return Err(inapplicable(format!(
            "edge {f} must contain both {} and {}",
            p.start(),
            p.at(i + 1)
        )));
    }
    Ok(reverse_prefix(p, i, f))
}

pub(crate) fn apply_double(
    h: &Hypergraph,
    p: &BergePath,
    i: usize,
    j: usize,
    f: usize,
) -> Result<BergePath> {
    check_edge_position(p, i)?;
    if j == 0 || j >= i {
        return Err(inapplicable(format!(
            "need 1 <= j < i, got i = {i}, j = {j}"
        )));
    }
    check_off_path(h, p, f)?;
    let fi = p.edge_at(i);
    if !h.edge(fi).contains(p.start()) {
        return Err(inapplicable(format!(
            "start vertex {} is not in edge {fi} at position {i}",
            p.start()
        )));
    }
    let set = h.edge(f);
    if !set.contains(p.at(j)) || !set.contains(p.at(i + 1)) {
        return Err(inapplicable(format!(
            "edge {f} must contain both {} and {}",
            p.at(j),
            p.at(i + 1)
        )));
    }
    // 0-based: vertices j..i, then 0..j, then i+1..
    let mut vertices = Vec::with_capacity(p.len());
    vertices.extend_from_slice(&p.vertices[j..i]);
    vertices.extend_from_slice(&p.vertices[..j]);
    vertices.extend_from_slice(&p.vertices[i..]);
    let mut edges = Vec::with_capacity(p.edges.len());
    edges.extend_from_slice(&p.edges[j..i - 1]);
    edges.push(fi);
    edges.extend_from_slice(&p.edges[..j - 1]);
    edges.push(f);
    edges.extend_from_slice(&p.edges[i..]);
    Ok(BergePath::new(vertices, edges))
}

pub(crate) fn apply(h: &Hypergraph, p: &BergePath, mv: Move) -> Result<BergePath> {
    match mv {
        Move::Defining { i } => apply_defining(h, p, i),
        Move::NonDefining { i, f } => apply_nondefining(h, p, i, f),
        Move::Double { i, j, f } => apply_double(h, p, i, j, f),
    }
}

/// Every applicable rotation of `p`, in a fixed order.
pub(crate) fn applicable_moves(h: &Hypergraph, p: &BergePath) -> Vec<Move> {
    let t = p.edges.len();
    if t == 0 {
        return Vec::new();
    }
    let start = p.start();
    let on_path: HashSet<usize> = p.edges.iter().copied().collect();
    let mut position = vec![0usize; h.n()];
    for (k, &v) in p.vertices.iter().enumerate() {
        position[v] = k + 1;
    }
    let defining: Vec<usize> = (2..=t)
        .filter(|&i| h.edge(p.edge_at(i)).contains(start))
        .collect();

    let mut moves: Vec<Move> = defining.iter().map(|&i| Move::Defining { i }).collect();
    for &f in h.incident_edges(start) {
        if on_path.contains(&f) {
            continue;
        }
        for w in h.edge(f).iter() {
            let pos = position[w];
            if w != start && pos >= 2 {
                moves.push(Move::NonDefining { i: pos - 1, f });
            }
        }
    }
    for &i in &defining {
        let next = p.at(i + 1);
        for &f in h.incident_edges(next) {
            if on_path.contains(&f) {
                continue;
            }
            for w in h.edge(f).iter() {
                let j = position[w];
                if j >= 1 && j < i {
                    moves.push(Move::Double { i, j, f });
                }
            }
        }
    }
    moves
}

/// Breadth-first closure of `p` under all rotations. Rotations of at most
/// `limit` paths are enumerated; every start vertex seen is recorded with
/// the first path reaching it. Works for any Berge path.
pub(crate) fn explore(h: &Hypergraph, p: &BergePath, limit: usize) -> BTreeMap<usize, BergePath> {
    let mut witnesses = BTreeMap::new();
    witnesses.insert(p.start(), p.clone());
    let mut seen: HashSet<BergePath> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(p.clone());
    queue.push_back(p.clone());
    let mut expanded = 0usize;
    while let Some(q) = queue.pop_front() {
        if expanded >= limit {
            break;
        }
        expanded += 1;
        for mv in applicable_moves(h, &q) {
            let child = apply(h, &q, mv).expect("enumerated rotation must apply");
            witnesses
                .entry(child.start())
                .or_insert_with(|| child.clone());
            if expanded + queue.len() < limit && !seen.contains(&child) {
                seen.insert(child.clone());
                queue.push_back(child);
            }
        }
    }
    witnesses
}

/// A Hamiltonian Berge path with its fixed last vertex and the start
/// vertices reached by rotations, each with a witness path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationState {
    pub path: BergePath,
    pub fixed_end: usize,
    pub reachable_ends: VertexSet,
    witnesses: BTreeMap<usize, BergePath>,
    /// Largest `x` such that the first `x` path vertices all lie in the
    /// closed neighborhood of the start through edges off the path.
    pub prefix_bound: usize,
    /// Positions `{1, .., x-1}` (and always position 1).
    pub prefix_set: PositionSet,
}

fn prefix_of(h: &Hypergraph, p: &BergePath) -> (usize, PositionSet) {
    let off: HashSet<usize> = p.edges.iter().copied().collect();
    let start = p.start();
    let mut closed = h.neighborhood_within(start, |e| !off.contains(&e));
    closed.insert(start);
    let x = p
        .vertices
        .iter()
        .take_while(|&&v| closed.contains(v))
        .count();
    let set: PositionSet = (1..x.max(2)).collect();
    (x, set)
}

impl RotationState {
    pub fn new(h: &Hypergraph, path: BergePath) -> Result<Self> {
        if !path.is_hamiltonian_in(h) {
            return Err(Error::precondition(
                "rotation state needs a Hamiltonian Berge path",
            ));
        }
        let mut witnesses = BTreeMap::new();
        witnesses.insert(path.start(), path.clone());
        Ok(Self::assemble(h, path, witnesses))
    }

    fn assemble(h: &Hypergraph, path: BergePath, witnesses: BTreeMap<usize, BergePath>) -> Self {
        let (prefix_bound, prefix_set) = prefix_of(h, &path);
        RotationState {
            fixed_end: path.end(),
            reachable_ends: witnesses.keys().copied().collect(),
            witnesses,
            prefix_bound,
            prefix_set,
            path,
        }
    }

    pub fn witness(&self, v: usize) -> Option<&BergePath> {
        self.witnesses.get(&v)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (usize, &BergePath)> {
        self.witnesses.iter().map(|(&v, p)| (v, p))
    }

    fn rotated(&self, h: &Hypergraph, mv: Move) -> Result<Self> {
        let next = apply(h, &self.path, mv)?;
        let mut witnesses = self.witnesses.clone();
        witnesses
            .entry(next.start())
            .or_insert_with(|| next.clone());
        Ok(Self::assemble(h, next, witnesses))
    }

    /// Whether edge `e` is in `H_1`: off the path, or one of `f_1..f_{x-1}`.
    fn in_h1(&self, e: usize) -> bool {
        match self.path.edges.iter().position(|&f| f == e) {
            None => true,
            Some(k) => k + 1 < self.prefix_bound,
        }
    }

    /// The set `N_{H_1}[S_1]^- ∪ { v_y : v_i in f_y, i < x <= y }`, which
    /// every rotation-reachable start set must contain.
    pub fn claim_one_set(&self, h: &Hypergraph) -> VertexSet {
        let p = &self.path;
        let s1 = p.vertices_at(self.prefix_set);
        let closed = h.closed_neighborhood_within(s1, |e| self.in_h1(e));
        let mut positions = shift_left(p.positions_of(closed), p);
        let x = self.prefix_bound;
        let early: VertexSet = p
            .vertices
            .iter()
            .take(x.saturating_sub(1))
            .copied()
            .collect();
        for y in x.max(1)..=p.edges.len() {
            if !h.edge(p.edge_at(y)).intersection(early).is_empty() {
                positions.insert(y);
            }
        }
        p.vertices_at(positions)
    }

    pub fn claim_one_holds(&self, h: &Hypergraph) -> bool {
        self.claim_one_set(h).is_subset(self.reachable_ends)
    }
}

/// Rotation with the defining edge `f_i`.
pub fn rotate_defining(h: &Hypergraph, state: &RotationState, i: usize) -> Result<RotationState> {
    state.rotated(h, Move::Defining { i })
}

/// Rotation with an edge `f` off the path containing `u_1` and `u_{i+1}`.
pub fn rotate_nondefining(
    h: &Hypergraph,
    state: &RotationState,
    i: usize,
    f: usize,
) -> Result<RotationState> {
    state.rotated(h, Move::NonDefining { i, f })
}

/// Rotation with the defining edge `f_i` and an off-path edge `f`
/// containing `u_j` and `u_{i+1}`.
pub fn rotate_double(
    h: &Hypergraph,
    state: &RotationState,
    i: usize,
    j: usize,
    f: usize,
) -> Result<RotationState> {
    state.rotated(h, Move::Double { i, j, f })
}

pub fn rotation_closure(h: &Hypergraph, p: &BergePath) -> Result<RotationState> {
    rotation_closure_with_limit(h, p, DEFAULT_CLOSURE_LIMIT)
}

pub fn rotation_closure_with_limit(
    h: &Hypergraph,
    p: &BergePath,
    limit: usize,
) -> Result<RotationState> {
    if !p.is_hamiltonian_in(h) {
        return Err(Error::precondition(
            "rotation closure needs a Hamiltonian Berge path",
        ));
    }
    let witnesses = explore(h, p, limit.max(1));
    Ok(RotationState::assemble(h, p.clone(), witnesses))
}
