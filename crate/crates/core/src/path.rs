//! Berge paths and cycles as certificates, their verifiers, and the
//! left/right shifts of position sets along a path.
//!
//! Vertex and edge ids are 0-based. Positions along a path are 1-based: the
//! path `v_1, e_1, v_2, .., e_t, v_{t+1}` has vertex positions `1..=t+1`
//! and edge `e_i` sits between positions `i` and `i + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, PositionSet, VertexSet};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BergePath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BergeCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// The first constraint a path or cycle breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Wrong number of edges for the number of vertices.
    Shape {
        vertices: usize,
        edges: usize,
    },
    VertexOutOfRange {
        position: usize,
        vertex: usize,
    },
    EdgeOutOfRange {
        position: usize,
        edge: usize,
    },
    DuplicateVertex {
        position: usize,
        vertex: usize,
    },
    DuplicateEdge {
        position: usize,
        edge: usize,
    },
    /// Edge at `position` misses one of its two flanking vertices.
    IncidenceBroken {
        position: usize,
        edge: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Shape { vertices, edges } => {
                write!(
                    f,
                    "malformed sequence: {vertices} vertices with {edges} edges"
                )
            }
            Violation::VertexOutOfRange { position, vertex } => {
                write!(f, "vertex {vertex} at position {position} out of range")
            }
            Violation::EdgeOutOfRange { position, edge } => {
                write!(f, "edge id {edge} at position {position} out of range")
            }
            Violation::DuplicateVertex { position, vertex } => {
                write!(f, "duplicate vertex {vertex} at position {position}")
            }
            Violation::DuplicateEdge { position, edge } => {
                write!(f, "duplicate edge {edge} at position {position}")
            }
            Violation::IncidenceBroken { position, edge } => {
                write!(
                    f,
                    "incidence broken: edge {edge} at position {position} misses a flanking vertex"
                )
            }
        }
    }
}

impl std::error::Error for Violation {}

fn check_items(h: &Hypergraph, vertices: &[usize], edges: &[usize]) -> Result<(), Violation> {
    let mut seen = VertexSet::EMPTY;
    for (k, &v) in vertices.iter().enumerate() {
        if v >= h.n() {
            return Err(Violation::VertexOutOfRange {
                position: k + 1,
                vertex: v,
            });
        }
        if seen.contains(v) {
            return Err(Violation::DuplicateVertex {
                position: k + 1,
                vertex: v,
            });
        }
        seen.insert(v);
    }
    let mut used = std::collections::HashSet::with_capacity(edges.len());
    for (k, &e) in edges.iter().enumerate() {
        if e >= h.edge_count() {
            return Err(Violation::EdgeOutOfRange {
                position: k + 1,
                edge: e,
            });
        }
        if !used.insert(e) {
            return Err(Violation::DuplicateEdge {
                position: k + 1,
                edge: e,
            });
        }
    }
    Ok(())
}

pub fn verify_berge_path(h: &Hypergraph, p: &BergePath) -> Result<(), Violation> {
    if p.vertices.is_empty() || p.vertices.len() != p.edges.len() + 1 {
        return Err(Violation::Shape {
            vertices: p.vertices.len(),
            edges: p.edges.len(),
        });
    }
    check_items(h, &p.vertices, &p.edges)?;
    for (i, &e) in p.edges.iter().enumerate() {
        let set = h.edge(e);
        if !set.contains(p.vertices[i]) || !set.contains(p.vertices[i + 1]) {
            return Err(Violation::IncidenceBroken {
                position: i + 1,
                edge: e,
            });
        }
    }
    Ok(())
}

pub fn verify_berge_cycle(h: &Hypergraph, c: &BergeCycle) -> Result<(), Violation> {
    let t = c.vertices.len();
    if t < 2 || t != c.edges.len() {
        return Err(Violation::Shape {
            vertices: t,
            edges: c.edges.len(),
        });
    }
    check_items(h, &c.vertices, &c.edges)?;
    for (i, &e) in c.edges.iter().enumerate() {
        let set = h.edge(e);
        if !set.contains(c.vertices[i]) || !set.contains(c.vertices[(i + 1) % t]) {
            return Err(Violation::IncidenceBroken {
                position: i + 1,
                edge: e,
            });
        }
    }
    Ok(())
}

impl BergePath {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        BergePath { vertices, edges }
    }

    /// Number of vertices (`t + 1` for a path of length `t`).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("empty path")
    }

    /// Vertex at 1-based `position`.
    pub fn at(&self, position: usize) -> usize {
        self.vertices[position - 1]
    }

    /// Edge `e_i` at 1-based `position`, between vertices `i` and `i + 1`.
    pub fn edge_at(&self, position: usize) -> usize {
        self.edges[position - 1]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// 1-based position of `v`, if on the path.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v).map(|i| i + 1)
    }

    pub fn positions_of(&self, set: VertexSet) -> PositionSet {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, &v)| set.contains(v))
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn vertices_at(&self, positions: PositionSet) -> VertexSet {
        positions.iter().map(|p| self.at(p)).collect()
    }

    pub fn is_hamiltonian_in(&self, h: &Hypergraph) -> bool {
        self.len() == h.n() && verify_berge_path(h, self).is_ok()
    }

    pub fn reversed(&self) -> BergePath {
        BergePath {
            vertices: self.vertices.iter().rev().copied().collect(),
            edges: self.edges.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for BergePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",e{},", self.edges[i - 1])?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `v1,e,v2,...,vt,e,v1`: the first vertex is repeated to close the cycle.
impl fmt::Display for BergeCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, e) in self.vertices.iter().zip(&self.edges) {
            write!(f, "{v},e{e},")?;
        }
        match self.vertices.first() {
            Some(v) => write!(f, "{v}"),
            None => Ok(()),
        }
    }
}

impl BergeCycle {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        BergeCycle { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_hamiltonian_in(&self, h: &Hypergraph) -> bool {
        self.len() == h.n() && verify_berge_cycle(h, self).is_ok()
    }
}

/// `A^- = { i : i + 1 in A, i >= 1 }`. Position 1 contributes nothing.
pub fn shift_left(a: PositionSet, path: &BergePath) -> PositionSet {
    debug_assert!(a.is_subset(path_positions(path)));
    BitSet::from_bits(a.bits() >> 1).difference(BitSet::singleton(0))
}

/// `A^+ = { i + 1 : i in A, i + 1 <= len }`. The last position contributes
/// nothing.
pub fn shift_right(a: PositionSet, path: &BergePath) -> PositionSet {
    let all = path_positions(path);
    debug_assert!(a.is_subset(all));
    BitSet::from_bits(a.bits() << 1).intersection(all)
}

/// `{1, .., len}`.
pub fn path_positions(path: &BergePath) -> PositionSet {
    BitSet::prefix(path.len() + 1).difference(BitSet::singleton(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(items: &[usize]) -> PositionSet {
        items.iter().copied().collect()
    }

    fn line(n: usize) -> BergePath {
        BergePath::new((0..n).collect(), (0..n - 1).collect())
    }

    #[test]
    fn shift_examples() {
        let p = line(6);
        assert_eq!(shift_left(ps(&[2, 5]), &p), ps(&[1, 4]));
        assert_eq!(shift_left(ps(&[1]), &p), ps(&[]));
        assert_eq!(shift_left(ps(&[1, 2]), &p), ps(&[1]));
        assert_eq!(shift_right(ps(&[1, 4]), &p), ps(&[2, 5]));
        assert_eq!(shift_right(ps(&[6]), &p), ps(&[]));
        assert_eq!(shift_right(ps(&[5, 6]), &p), ps(&[6]));
    }

    #[test]
    fn path_verifier() {
        let h = Hypergraph::new(3, [vec![0, 1, 2], vec![1, 2]]).unwrap();
        let big = h.edge_id([0, 1, 2].into_iter().collect()).unwrap();
        let small = h.edge_id([1, 2].into_iter().collect()).unwrap();
        assert_eq!(
            verify_berge_path(&h, &BergePath::new(vec![0, 1], vec![big])),
            Ok(())
        );
        assert_eq!(
            verify_berge_path(&h, &BergePath::new(vec![0, 1, 2], vec![big, big])),
            Err(Violation::DuplicateEdge {
                position: 2,
                edge: big
            })
        );
        assert_eq!(
            verify_berge_path(&h, &BergePath::new(vec![0, 1], vec![small])),
            Err(Violation::IncidenceBroken {
                position: 1,
                edge: small
            })
        );
        assert!(matches!(
            verify_berge_path(&h, &BergePath::new(vec![0, 1], vec![])),
            Err(Violation::Shape { .. })
        ));
        assert!(matches!(
            verify_berge_path(&h, &BergePath::new(vec![0, 0], vec![big])),
            Err(Violation::DuplicateVertex { position: 2, .. })
        ));
        assert!(matches!(
            verify_berge_path(&h, &BergePath::new(vec![0, 1], vec![7])),
            Err(Violation::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn cycle_verifier() {
        // {i, i+1, i+2 mod 5}
        let edges: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
        let h = Hypergraph::new(5, edges.clone()).unwrap();
        let ids: Vec<usize> = edges
            .iter()
            .map(|e| h.edge_id(e.iter().copied().collect()).unwrap())
            .collect();
        let c = BergeCycle::new((0..5).collect(), ids.clone());
        assert_eq!(verify_berge_cycle(&h, &c), Ok(()));
        assert!(c.is_hamiltonian_in(&h));

        let mut reuse = ids.clone();
        reuse[4] = reuse[0];
        assert!(matches!(
            verify_berge_cycle(&h, &BergeCycle::new((0..5).collect(), reuse)),
            Err(Violation::DuplicateEdge { .. })
        ));

        // a 2-cycle needs two distinct edges on the same pair
        let h2 = Hypergraph::new(3, [vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(
            verify_berge_cycle(&h2, &BergeCycle::new(vec![0, 1], vec![0, 1])),
            Ok(())
        );
        let h1 = Hypergraph::new(3, [vec![0, 1], vec![1, 2]]).unwrap();
        assert!(verify_berge_cycle(&h1, &BergeCycle::new(vec![0, 1], vec![0, 1])).is_err());
        assert!(verify_berge_cycle(&h1, &BergeCycle::new(vec![0, 1], vec![0, 0])).is_err());
    }
}
