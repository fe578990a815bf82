//! The hypergraph data model: vertices `0..n`, a canonical list of distinct
//! nonempty edges, degrees and neighborhoods, and the incidence bipartite
//! graph.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// A simple hypergraph on vertices `0..n`.
///
/// Edges are kept sorted by size, then lexicographically by their ascending
/// vertex lists; an edge id is an index into that canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
    incident: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            n: h.n,
            edges: h.edges.iter().map(|e| e.to_vec()).collect(),
        }
    }
}

/// Canonical edge order: by size, then lexicographic on the ascending vertex list.
pub fn canonical_cmp(a: VertexSet, b: VertexSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl Hypergraph {
    pub fn new<E, I>(n: usize, edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        if n > MAX_VERTICES {
            return Err(Error::InvalidHypergraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut masks = Vec::new();
        for (idx, edge) in edges.into_iter().enumerate() {
            let mut set = VertexSet::EMPTY;
            for v in edge {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if set.contains(v) {
                    return Err(Error::InvalidHypergraph(format!(
                        "edge #{idx} lists vertex {v} twice"
                    )));
                }
                set.insert(v);
            }
            masks.push(set);
        }
        Self::from_sets(n, masks)
    }

    pub fn from_sets(n: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidHypergraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let all = VertexSet::prefix(n);
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if e.is_empty() {
                return Err(Error::InvalidHypergraph("empty edge".into()));
            }
            if !e.is_subset(all) {
                let vertex = e.difference(all).min().unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
        }
        edges.sort_by(|a, b| canonical_cmp(*a, *b));
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidHypergraph(format!("duplicate edge {}", w[0])));
        }
        let mut incident = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            for v in e.iter() {
                incident[v].push(id);
            }
        }
        Ok(Hypergraph { n, edges, incident })
    }

    /// The complete `r`-uniform hypergraph on `n` vertices.
    pub fn complete_uniform(n: usize, r: usize) -> Result<Self> {
        Self::from_sets(n, crate::combinatorics::k_subsets(VertexSet::prefix(n), r))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    #[inline]
    pub fn edge(&self, id: usize) -> VertexSet {
        self.edges[id]
    }

    pub fn try_edge(&self, id: usize) -> Result<VertexSet> {
        self.edges.get(id).copied().ok_or(Error::EdgeOutOfRange {
            edge: id,
            m: self.edges.len(),
        })
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_id(&self, set: VertexSet) -> Option<usize> {
        self.edges.binary_search_by(|e| canonical_cmp(*e, set)).ok()
    }

    /// Edge ids containing `v`, ascending (so smallest edges first).
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// `Some(r)` when every edge has exactly `r` vertices (and there is at
    /// least one edge).
    pub fn uniformity(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == r).then_some(r)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Number of edges incident with `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incident[v].len())
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut values: Vec<u64> = self.incident.iter().map(|i| i.len() as u64).collect();
        values.sort_unstable();
        DegreeSequence {
            values,
            source: Provenance::Computed {
                edges: self.edges.len(),
            },
        }
    }

    /// Vertices other than `v` that share an edge with `v`.
    pub fn neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.neighborhood_within(v, |_| true))
    }

    /// Neighborhood of `v` using only the edges accepted by `keep`.
    pub fn neighborhood_within(&self, v: usize, keep: impl Fn(usize) -> bool) -> VertexSet {
        let mut nb = VertexSet::EMPTY;
        for &id in &self.incident[v] {
            if keep(id) {
                nb = nb.union(self.edges[id]);
            }
        }
        nb.remove(v);
        nb
    }

    /// `N[S]`: the union of closed neighborhoods of the vertices of `s`.
    pub fn closed_neighborhood_set(&self, s: VertexSet) -> Result<VertexSet> {
        if let Some(v) = s.difference(self.vertices()).min() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.closed_neighborhood_within(s, |_| true))
    }

    pub fn closed_neighborhood_within(
        &self,
        s: VertexSet,
        keep: impl Fn(usize) -> bool,
    ) -> VertexSet {
        let mut out = s;
        for v in s.iter() {
            out = out.union(self.neighborhood_within(v, &keep));
        }
        out
    }

    /// Adjacency of the 2-shadow: `u ~ v` iff some edge contains both.
    pub fn shadow(&self) -> Vec<VertexSet> {
        (0..self.n)
            .map(|v| self.neighborhood_within(v, |_| true))
            .collect()
    }

    /// Applies the vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n
            || perm.iter().any(|&v| v >= self.n)
            || perm.iter().copied().collect::<VertexSet>().len() != self.n
        {
            return Err(Error::precondition(
                "relabeling must be a permutation of the vertices",
            ));
        }
        Self::from_sets(
            self.n,
            self.edges
                .iter()
                .map(|e| e.iter().map(|v| perm[v]).collect::<VertexSet>()),
        )
    }

    pub fn incidence_bipartite(&self) -> IncidenceBipartite {
        IncidenceBipartite {
            left: self.n,
            right_adjacency: self.edges.clone(),
            left_adjacency: self.incident.clone(),
        }
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// Where a degree sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed { edges: usize },
    Given,
}

/// A non-decreasing sequence `d_1 <= d_2 <= .. <= d_n`.
///
/// Indexing through [`DegreeSequence::d`] is 1-based to match the usual
/// statement of degree conditions; `values()` is the plain 0-based slice.
/// Equality compares values only.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeSequence {
    values: Vec<u64>,
    source: Provenance,
}

impl PartialEq for DegreeSequence {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for DegreeSequence {}

impl DegreeSequence {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::precondition(format!(
                "sequence is not ascending at d_{} = {} > d_{} = {}",
                i + 1,
                values[i],
                i + 2,
                values[i + 1]
            )));
        }
        Ok(DegreeSequence {
            values,
            source: Provenance::Given,
        })
    }

    pub fn from_unsorted(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        DegreeSequence {
            values,
            source: Provenance::Given,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn source(&self) -> Provenance {
        self.source
    }

    /// `d_i` for `1 <= i <= n`.
    #[inline]
    pub fn d(&self, i: usize) -> u64 {
        self.values[i - 1]
    }

    /// Minimum degree, `d_1`.
    pub fn min_degree(&self) -> Option<u64> {
        self.values.first().copied()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Bipartite graph with hypergraph vertices on the left, edges on the right,
/// and `v ~ e` iff `v` lies in `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceBipartite {
    left: usize,
    right_adjacency: Vec<VertexSet>,
    left_adjacency: Vec<Vec<usize>>,
}

impl IncidenceBipartite {
    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right_adjacency.len()
    }

    /// Left neighbors of right node `e`.
    pub fn right_neighbors(&self, e: usize) -> VertexSet {
        self.right_adjacency[e]
    }

    /// Right neighbors of left node `v`.
    pub fn left_neighbors(&self, v: usize) -> &[usize] {
        &self.left_adjacency[v]
    }

    pub fn right_degree(&self, e: usize) -> usize {
        self.right_adjacency[e].len()
    }

    pub fn adjacent(&self, v: usize, e: usize) -> bool {
        self.right_adjacency[e].contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    fn k4_3() -> Hypergraph {
        Hypergraph::complete_uniform(4, 3).unwrap()
    }

    #[test]
    fn canonical_order_and_lookup() {
        let h = Hypergraph::new(4, [vec![2, 3], vec![0, 1, 2], vec![1], vec![0, 3]]).unwrap();
        let edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.to_vec()).collect();
        assert_eq!(edges, vec![vec![1], vec![0, 3], vec![2, 3], vec![0, 1, 2]]);
        assert_eq!(h.edge_id([0, 1, 2].into_iter().collect()), Some(3));
        assert_eq!(h.edge_id([0, 1].into_iter().collect()), None);
    }

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(
            Hypergraph::new(3, [vec![0, 1], vec![1, 0]]),
            Err(Error::InvalidHypergraph(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, [Vec::<usize>::new()]),
            Err(Error::InvalidHypergraph(_))
        ));
        assert!(matches!(
            Hypergraph::new(3, [vec![0, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(Hypergraph::new(64, Vec::<Vec<usize>>::new()).is_err());
        // singleton edges are admitted
        assert!(Hypergraph::new(2, [vec![0]]).is_ok());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(k4_3().degree(0).unwrap(), 3);
        let h = Hypergraph::new(4, [vec![0, 1, 2]]).unwrap();
        assert_eq!(h.degree(3).unwrap(), 0);
        assert!(matches!(h.degree(4), Err(Error::VertexOutOfRange { .. })));

        let (h2, spec) = constructions::example2(9, 3, 4).unwrap();
        for v in spec.part(0).iter() {
            assert_eq!(h2.degree(v).unwrap(), 6);
        }
    }

    #[test]
    fn degree_sequence_examples() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        assert_eq!(h.degree_sequence().values(), &[1, 1, 1]);
        assert_eq!(
            h.degree_sequence().source(),
            Provenance::Computed { edges: 1 }
        );

        let (h2, _) = constructions::example2(9, 3, 4).unwrap();
        assert_eq!(
            h2.degree_sequence().values(),
            &[6, 6, 6, 6, 6, 18, 18, 18, 18]
        );

        let (h3, _) = constructions::example3(10, 3).unwrap();
        assert_eq!(
            h3.degree_sequence().values(),
            &[6, 6, 6, 7, 7, 7, 21, 21, 21, 21]
        );
    }

    #[test]
    fn neighborhood_examples() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        assert_eq!(h.neighborhood(0).unwrap().to_vec(), vec![1, 2]);
        let h = Hypergraph::new(4, [vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(h.neighborhood(0).unwrap().to_vec(), vec![1]);
        assert!(h.neighborhood(9).is_err());

        let (h2, spec) = constructions::example2(9, 3, 4).unwrap();
        for v in spec.part(0).iter() {
            assert_eq!(h2.neighborhood(v).unwrap(), spec.part(1));
        }
    }

    #[test]
    fn closed_neighborhood_examples() {
        let h = Hypergraph::new(4, [vec![1, 3]]).unwrap();
        assert_eq!(
            h.closed_neighborhood_set(VertexSet::EMPTY).unwrap(),
            VertexSet::EMPTY
        );
        assert_eq!(
            h.closed_neighborhood_set(VertexSet::singleton(1))
                .unwrap()
                .to_vec(),
            vec![1, 3]
        );
        let (h2, spec) = constructions::example2(9, 3, 4).unwrap();
        let closed = h2.closed_neighborhood_set(spec.part(0)).unwrap();
        assert_eq!(closed, spec.part(0).union(spec.part(1)));
        assert_eq!(closed.len(), 8);
    }

    #[test]
    fn incidence_examples() {
        let h = Hypergraph::new(2, [vec![0, 1]]).unwrap();
        let g = h.incidence_bipartite();
        assert_eq!((g.left_count(), g.right_count()), (2, 1));
        assert_eq!(g.right_degree(0), 2);

        let g = k4_3().incidence_bipartite();
        assert_eq!(g.right_count(), 4);
        assert!((0..4).all(|e| g.right_degree(e) == 3));

        let (h1, _) = constructions::example1(8, 3, 2).unwrap();
        assert_eq!(h1.incidence_bipartite().right_count(), 22);
    }

    #[test]
    fn ascending_sequence_required() {
        assert!(DegreeSequence::new(vec![1, 2, 2]).is_ok());
        assert!(DegreeSequence::new(vec![2, 1]).is_err());
        assert_eq!(
            DegreeSequence::from_unsorted(vec![3, 1, 2]).values(),
            &[1, 2, 3]
        );
    }

    #[test]
    fn serde_roundtrip_canonicalizes() {
        let json = r#"{"n":3,"edges":[[1,2],[0,1]]}"#;
        let h: Hypergraph = serde_json::from_str(json).unwrap();
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"n":3,"edges":[[0,1],[1,2]]}"#
        );
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":2,"edges":[[0,1],[1,0]]}"#).is_err());
    }
}
