//! The `.bhg` text format and certificate documents.
//!
//! `.bhg`: a header line `n m`, then `m` lines each listing one edge as
//! ascending vertex ids separated by spaces. `#` starts a comment; blank
//! lines are ignored.
//!
//! Certificates are JSON objects with `type` (`path` or `cycle`), `n`,
//! `vertices`, `edge_ids` and `edges` (the vertex lists of the named edges,
//! kept for auditing by hand).

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::path::{verify_berge_cycle, verify_berge_path, BergeCycle, BergePath};

/// Tokens of a line with their 1-based columns, comments removed.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn number(line: usize, column: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| {
        Error::parse(
            line,
            column,
            format!("expected a non-negative integer, found '{tok}'"),
        )
    })
}

pub fn parse_bhg(text: &str) -> Result<Hypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<VertexSet> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        let Some((n, m)) = header else {
            if toks.len() != 2 {
                let col = toks.get(2).map_or(toks[0].0, |t| t.0);
                return Err(Error::parse(line, col, "header must be 'n m'"));
            }
            let n = number(line, toks[0].0, toks[0].1)?;
            let m = number(line, toks[1].0, toks[1].1)?;
            if n > MAX_VERTICES {
                return Err(Error::parse(
                    line,
                    toks[0].0,
                    format!("n = {n} exceeds {MAX_VERTICES}"),
                ));
            }
            header = Some((n, m));
            continue;
        };
        if edges.len() == m {
            return Err(Error::parse(
                line,
                toks[0].0,
                format!("more than the declared {m} edges"),
            ));
        }
        let mut e = VertexSet::EMPTY;
        let mut prev: Option<usize> = None;
        for &(col, tok) in &toks {
            let v = number(line, col, tok)?;
            if v >= n {
                return Err(Error::parse(
                    line,
                    col,
                    format!("vertex {v} out of range for n = {n}"),
                ));
            }
            if prev.is_some_and(|p| p >= v) {
                return Err(Error::parse(
                    line,
                    col,
                    "vertex ids must be strictly ascending",
                ));
            }
            prev = Some(v);
            e.insert(v);
        }
        if !seen.insert(e) {
            return Err(Error::parse(line, toks[0].0, "duplicate edge"));
        }
        edges.push(e);
    }
    let Some((n, m)) = header else {
        return Err(Error::parse(last_line.max(1), 1, "missing 'n m' header"));
    };
    if edges.len() != m {
        return Err(Error::parse(
            last_line + 1,
            1,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Hypergraph::from_sets(n, edges)
}

/// Canonical `.bhg` text: edges in the hypergraph's canonical order.
pub fn write_bhg(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.edge_count());
    for e in h.edges() {
        let verts: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", verts.join(" "));
    }
    out
}

pub fn read_bhg(path: &Path) -> Result<Hypergraph> {
    parse_bhg(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "type")]
    pub kind: CertificateKind,
    pub n: usize,
    pub vertices: Vec<usize>,
    pub edge_ids: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
}

impl Certificate {
    pub fn from_cycle(h: &Hypergraph, c: &BergeCycle) -> Self {
        Self::build(h, CertificateKind::Cycle, &c.vertices, &c.edges)
    }

    pub fn from_path(h: &Hypergraph, p: &BergePath) -> Self {
        Self::build(h, CertificateKind::Path, &p.vertices, &p.edges)
    }

    fn build(
        h: &Hypergraph,
        kind: CertificateKind,
        vertices: &[usize],
        edge_ids: &[usize],
    ) -> Self {
        Certificate {
            kind,
            n: h.n(),
            vertices: vertices.to_vec(),
            edge_ids: edge_ids.to_vec(),
            edges: edge_ids.iter().map(|&e| h.edge(e).to_vec()).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    /// Checks the certificate against `h`, or, without one, against the
    /// hypergraph formed by its own listed edges. Succeeds only for a
    /// Hamiltonian Berge path or cycle whose listed edges match the ids.
    pub fn verify(&self, h: Option<&Hypergraph>) -> std::result::Result<(), String> {
        let own;
        let (h, ids) = match h {
            Some(h) => {
                if h.n() != self.n {
                    return Err(format!(
                        "certificate has n = {}, hypergraph has n = {}",
                        self.n,
                        h.n()
                    ));
                }
                if self.edges.len() != self.edge_ids.len() {
                    return Err("edges and edge_ids differ in length".into());
                }
                for (i, (&id, listed)) in self.edge_ids.iter().zip(&self.edges).enumerate() {
                    let actual = h.try_edge(id).map_err(|e| e.to_string())?;
                    if actual.to_vec() != *listed {
                        return Err(format!(
                            "edge {} at position {} is {actual}, not {listed:?}",
                            id,
                            i + 1
                        ));
                    }
                }
                (h, self.edge_ids.clone())
            }
            None => {
                own = Hypergraph::new(self.n, self.edges.iter().map(|e| e.iter().copied()))
                    .map_err(|e| e.to_string())?;
                let ids = self
                    .edges
                    .iter()
                    .map(|e| {
                        let set: VertexSet = e.iter().copied().collect();
                        own.edge_id(set).expect("edge was just inserted")
                    })
                    .collect();
                (&own, ids)
            }
        };
        if self.vertices.len() != h.n() {
            return Err(format!(
                "{} vertices listed, need all {}",
                self.vertices.len(),
                h.n()
            ));
        }
        match self.kind {
            CertificateKind::Cycle => {
                verify_berge_cycle(h, &BergeCycle::new(self.vertices.clone(), ids))
                    .map_err(|v| v.to_string())
            }
            CertificateKind::Path => {
                verify_berge_path(h, &BergePath::new(self.vertices.clone(), ids))
                    .map_err(|v| v.to_string())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, usize) {
        match parse_bhg(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn roundtrip() {
        let h = Hypergraph::new(5, [vec![2, 3, 4], vec![0, 1], vec![0, 1, 2]]).unwrap();
        let text = write_bhg(&h);
        assert_eq!(text, "5 3\n0 1\n0 1 2\n2 3 4\n");
        assert_eq!(parse_bhg(&text).unwrap(), h);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a triangle\n3 3\n\n0 1 # first\n1 2\n0 2\n";
        let h = parse_bhg(text).unwrap();
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn diagnostics() {
        assert_eq!(parse_err("3\n"), (1, 1));
        assert_eq!(parse_err("3 x\n"), (1, 3));
        assert_eq!(parse_err("3 1\n0  5\n"), (2, 4));
        assert_eq!(parse_err("3 1\n1 0\n"), (2, 3));
        assert_eq!(parse_err("3 2\n0 1\n"), (3, 1));
        assert_eq!(parse_err("3 1\n0 1\n1 2\n"), (3, 1));
        assert_eq!(parse_err("3 2\n0 1\n0 1\n"), (3, 1));
        assert_eq!(parse_err("# nothing\n"), (1, 1));
    }

    #[test]
    fn certificates() {
        let h = Hypergraph::complete_uniform(4, 2).unwrap();
        let id = |a: usize, b: usize| h.edge_id([a, b].into_iter().collect()).unwrap();
        let c = BergeCycle::new(
            vec![0, 1, 2, 3],
            vec![id(0, 1), id(1, 2), id(2, 3), id(0, 3)],
        );
        let cert = Certificate::from_cycle(&h, &c);
        assert_eq!(cert.verify(Some(&h)), Ok(()));
        assert_eq!(cert.verify(None), Ok(()));
        let back = Certificate::from_json(&cert.to_json().unwrap()).unwrap();
        assert_eq!(back, cert);
        assert!(cert.to_json().unwrap().contains("\"type\": \"cycle\""));

        let mut tampered = cert.clone();
        tampered.vertices.swap(1, 2);
        assert!(tampered.verify(Some(&h)).is_err());
        assert!(tampered.verify(None).is_err());
        let mut tampered = cert.clone();
        tampered.edges[0] = vec![0, 2];
        assert!(tampered.verify(Some(&h)).is_err());

        let p = BergePath::new(vec![0, 1, 2, 3], vec![id(0, 1), id(1, 2), id(2, 3)]);
        assert_eq!(Certificate::from_path(&h, &p).verify(Some(&h)), Ok(()));

        match Certificate::from_json("{\n  \"type\": 3\n}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
