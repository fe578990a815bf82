//! Exhaustive search for a Hamiltonian Berge cycle.
//!
//! The search fixes a start vertex and extends a vertex order one vertex at
//! a time. Edges are never branched on. Instead every vertex owns one
//! matching node standing for its incoming cycle edge: an edge containing
//! the vertex and, once the vertex is placed, its predecessor. A partial
//! order can be completed only if all these nodes can be matched to
//! distinct edges, so the matching is maintained incrementally (one
//! augmenting path per placement, undone on backtrack) and a failed
//! augmentation prunes the branch. When the last vertex closes onto the
//! start, the matching is the cycle's edge assignment.
//!
//! For `n <= 21` a table over unvisited sets records which vertices can
//! begin a shadow-graph path covering the set and ending next to the start;
//! only those vertices are tried as successors.

use std::time::Instant;

use crate::bitset::VertexSet;
use crate::hypergraph::Hypergraph;
use crate::path::BergeCycle;

use super::{Outcome, SearchBudget, SearchReport};

const NONE: u32 = u32::MAX;
const TABLE_MAX_N: usize = 21;

enum Undo {
    NodeEdge(usize, u32),
    EdgeNode(usize, u32),
    Pred(usize, u32),
}

struct Completion {
    /// Compressed index of each vertex other than the start.
    index: Vec<u32>,
    shadow: Vec<u32>,
    /// `ends[U]`: vertices of `U` that can start a shadow path through all
    /// of `U` finishing adjacent to the start.
    ends: Vec<u32>,
}

impl Completion {
    fn build(shadow: &[VertexSet], start: usize) -> Self {
        let n = shadow.len();
        let mut index = vec![NONE; n];
        let mut verts = Vec::with_capacity(n - 1);
        for v in (0..n).filter(|&v| v != start) {
            index[v] = verts.len() as u32;
            verts.push(v);
        }
        let compress = |s: VertexSet| -> u32 {
            s.iter()
                .filter(|&v| v != start)
                .fold(0u32, |acc, v| acc | 1 << index[v])
        };
        let cshadow: Vec<u32> = verts.iter().map(|&v| compress(shadow[v])).collect();
        let near_start = compress(shadow[start]);
        let size = 1usize << verts.len();
        let mut ends = vec![0u32; size];
        for set in 1..size {
            let set = set as u32;
            if set.count_ones() == 1 {
                ends[set as usize] = set & near_start;
                continue;
            }
            let mut acc = 0u32;
            let mut rest = set;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                let without = set & !(1 << i);
                if cshadow[i as usize] & ends[without as usize] != 0 {
                    acc |= 1 << i;
                }
            }
            ends[set as usize] = acc;
        }
        let mut full_shadow = vec![0u32; n];
        for v in 0..n {
            full_shadow[v] = compress(shadow[v]);
        }
        Completion {
            index,
            shadow: full_shadow,
            ends,
        }
    }
}

pub(crate) struct ExactSearch<'a> {
    h: &'a Hypergraph,
    n: usize,
    usable: Vec<Vec<u32>>,
    degree: Vec<usize>,
    shadow: Vec<VertexSet>,
    start: usize,
    pred: Vec<u32>,
    node_edge: Vec<u32>,
    edge_node: Vec<u32>,
    undo: Vec<Undo>,
    stamp: Vec<u32>,
    epoch: u32,
    order: Vec<usize>,
    unvisited: VertexSet,
    unvisited_c: u32,
    completion: Option<Completion>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    exhausted: bool,
}

impl<'a> ExactSearch<'a> {
    pub(crate) fn run(h: &'a Hypergraph, budget: &SearchBudget) -> SearchReport {
        let n = h.n();
        let m = h.edge_count();
        let usable: Vec<Vec<u32>> = (0..n)
            .map(|v| {
                h.incident_edges(v)
                    .iter()
                    .filter(|&&e| h.edge(e).len() >= 2)
                    .map(|&e| e as u32)
                    .collect()
            })
            .collect();
        let degree: Vec<usize> = usable.iter().map(Vec::len).collect();
        // every vertex sits in two distinct cycle edges, and the cycle has n edges
        let usable_edges = h.edges().iter().filter(|e| e.len() >= 2).count();
        if degree.iter().any(|&d| d < 2) || usable_edges < n {
            return SearchReport {
                outcome: Outcome::NoneExists,
                nodes: 0,
            };
        }
        let start = (0..n).min_by_key(|&v| (degree[v], v)).unwrap_or(0);
        let shadow = h.shadow();
        let completion = (n <= TABLE_MAX_N).then(|| Completion::build(&shadow, start));
        let mut search = ExactSearch {
            h,
            n,
            usable,
            degree,
            shadow,
            start,
            pred: vec![NONE; n],
            node_edge: vec![NONE; n],
            edge_node: vec![NONE; m],
            undo: Vec::new(),
            stamp: vec![0; m],
            epoch: 0,
            order: Vec::with_capacity(n),
            unvisited: h.vertices(),
            unvisited_c: 0,
            completion,
            nodes: 0,
            max_nodes: budget.max_nodes,
            deadline: budget.time_limit.map(|t| Instant::now() + t),
            exhausted: false,
        };
        if let Some(c) = &search.completion {
            search.unvisited_c = c.ends.len() as u32 - 1;
        }
        for v in 0..n {
            if !search.augment_fresh(v) {
                return SearchReport {
                    outcome: Outcome::NoneExists,
                    nodes: 0,
                };
            }
        }
        search.undo.clear();

        search.visit(start);
        let found = search.dfs(start);
        let outcome = if found {
            Outcome::Cycle(search.certificate())
        } else if search.exhausted {
            Outcome::Unknown
        } else {
            Outcome::NoneExists
        };
        SearchReport {
            outcome,
            nodes: search.nodes,
        }
    }

    fn visit(&mut self, v: usize) {
        self.order.push(v);
        self.unvisited.remove(v);
        if let Some(c) = &self.completion {
            if v != self.start {
                self.unvisited_c &= !(1 << c.index[v]);
            }
        }
    }

    fn unvisit(&mut self, v: usize) {
        self.order.pop();
        self.unvisited.insert(v);
        if let Some(c) = &self.completion {
            if v != self.start {
                self.unvisited_c |= 1 << c.index[v];
            }
        }
    }

    fn certificate(&self) -> BergeCycle {
        let n = self.n;
        let edges = (0..n)
            .map(|i| self.node_edge[self.order[(i + 1) % n]] as usize)
            .collect();
        BergeCycle::new(self.order.clone(), edges)
    }

    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    fn dfs(&mut self, end: usize) -> bool {
        if self.order.len() == self.n {
            let mark = self.undo.len();
            if self.place(self.start, end) {
                return true;
            }
            self.rollback(mark);
            return false;
        }
        let mut next = self.shadow[end].intersection(self.unvisited);
        if let Some(c) = &self.completion {
            let allowed = c.ends[self.unvisited_c as usize] & c.shadow[end];
            next = next
                .iter()
                .filter(|&v| allowed >> c.index[v] & 1 == 1)
                .collect();
        } else if !self.residual_degrees_ok(end) {
            return false;
        }
        let mut candidates: Vec<(usize, usize, usize)> = next
            .iter()
            .map(|v| {
                let onward = self.shadow[v].intersection(self.unvisited).len();
                (onward, self.degree[v], v)
            })
            .collect();
        candidates.sort_unstable();
        for (_, _, v) in candidates {
            if self.out_of_budget() {
                return false;
            }
            let mark = self.undo.len();
            if self.place(v, end) {
                self.visit(v);
                if self.dfs(v) {
                    return true;
                }
                self.unvisit(v);
            }
            self.rollback(mark);
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Fallback pruning without the completion table: each unvisited vertex
    /// needs two shadow neighbors among the unvisited vertices and the two
    /// path ends.
    fn residual_degrees_ok(&self, end: usize) -> bool {
        let mut pool = self.unvisited;
        pool.insert(end);
        pool.insert(self.start);
        self.unvisited
            .iter()
            .all(|v| self.shadow[v].intersection(pool).len() >= 2)
    }

    /// Fixes `pred` as the predecessor of `v` and repairs the matching.
    fn place(&mut self, v: usize, pred: usize) -> bool {
        self.undo.push(Undo::Pred(v, self.pred[v]));
        self.pred[v] = pred as u32;
        let cur = self.node_edge[v];
        if cur != NONE && self.h.edge(cur as usize).contains(pred) {
            return true;
        }
        if cur != NONE {
            self.set_edge_node(cur as usize, NONE);
            self.set_node_edge(v, NONE);
        }
        self.epoch += 1;
        self.augment(v)
    }

    fn augment_fresh(&mut self, v: usize) -> bool {
        self.epoch += 1;
        self.augment(v)
    }

    fn augment(&mut self, v: usize) -> bool {
        let pred = self.pred[v];
        for k in 0..self.usable[v].len() {
            let e = self.usable[v][k] as usize;
            if self.stamp[e] == self.epoch {
                continue;
            }
            if pred != NONE && !self.h.edge(e).contains(pred as usize) {
                continue;
            }
            self.stamp[e] = self.epoch;
            let owner = self.edge_node[e];
            if owner == NONE || self.augment(owner as usize) {
                self.set_edge_node(e, v as u32);
                self.set_node_edge(v, e as u32);
                return true;
            }
        }
        false
    }

    fn set_node_edge(&mut self, v: usize, e: u32) {
        self.undo.push(Undo::NodeEdge(v, self.node_edge[v]));
        self.node_edge[v] = e;
    }

    fn set_edge_node(&mut self, e: usize, v: u32) {
        self.undo.push(Undo::EdgeNode(e, self.edge_node[e]));
        self.edge_node[e] = v;
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            match self.undo.pop().expect("undo log underflow") {
                Undo::NodeEdge(v, old) => self.node_edge[v] = old,
                Undo::EdgeNode(e, old) => self.edge_node[e] = old,
                Undo::Pred(v, old) => self.pred[v] = old,
            }
        }
    }
}
