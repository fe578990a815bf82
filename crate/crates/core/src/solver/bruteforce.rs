//! Factorial-time oracles, kept independent of the exact search: enumerate
//! vertex orders and check each one with a fresh bipartite matching between
//! consecutive pairs and edges.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::path::{BergeCycle, BergePath};

/// Largest `n` the oracles accept.
pub const BRUTEFORCE_MAX_N: usize = 8;

/// Kuhn's algorithm: assign each pair a distinct edge containing it.
fn distinct_representatives(h: &Hypergraph, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    fn try_assign(
        h: &Hypergraph,
        pairs: &[(usize, usize)],
        p: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        let (a, b) = pairs[p];
        for &e in h.incident_edges(a) {
            if seen[e] || !h.edge(e).contains(b) {
                continue;
            }
            seen[e] = true;
            if owner[e].is_none_or(|q| try_assign(h, pairs, q, seen, owner)) {
                owner[e] = Some(p);
                return true;
            }
        }
        false
    }

    let m = h.edge_count();
    if pairs.len() > m {
        return None;
    }
    let mut owner = vec![None; m];
    for p in 0..pairs.len() {
        let mut seen = vec![false; m];
        if !try_assign(h, pairs, p, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assigned = vec![0; pairs.len()];
    for (e, o) in owner.iter().enumerate() {
        if let Some(p) = o {
            assigned[*p] = e;
        }
    }
    Some(assigned)
}

/// Calls `visit` on every permutation of `items` (in place, Heap's algorithm)
/// until it returns `true`.
fn any_permutation(items: &mut [usize], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn heap(k: usize, items: &mut [usize], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if k <= 1 {
            return visit(items);
        }
        for i in 0..k - 1 {
            if heap(k - 1, items, visit) {
                return true;
            }
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        heap(k - 1, items, visit)
    }
    heap(items.len(), items, visit)
}

fn check_size(h: &Hypergraph) -> Result<()> {
    if h.n() > BRUTEFORCE_MAX_N {
        return Err(Error::precondition(format!(
            "brute force supports n <= {BRUTEFORCE_MAX_N}, got n = {}",
            h.n()
        )));
    }
    if h.n() < 3 {
        return Err(Error::precondition(format!(
            "need n >= 3, got n = {}",
            h.n()
        )));
    }
    Ok(())
}

/// A Hamiltonian Berge cycle found by exhaustive enumeration, if any.
pub fn hamiltonian_cycle_bruteforce(h: &Hypergraph) -> Result<Option<BergeCycle>> {
    check_size(h)?;
    let n = h.n();
    let mut rest: Vec<usize> = (1..n).collect();
    let mut found = None;
    any_permutation(&mut rest, &mut |perm| {
        let order: Vec<usize> = std::iter::once(0).chain(perm.iter().copied()).collect();
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        match distinct_representatives(h, &pairs) {
            Some(edges) => {
                found = Some(BergeCycle::new(order, edges));
                true
            }
            None => false,
        }
    });
    Ok(found)
}

pub fn is_hamiltonian_bruteforce(h: &Hypergraph) -> Result<bool> {
    Ok(hamiltonian_cycle_bruteforce(h)?.is_some())
}

/// Every vertex that starts some Hamiltonian Berge path ending at
/// `fixed_end`.
pub fn hamiltonian_path_starts(h: &Hypergraph, fixed_end: usize) -> Result<VertexSet> {
    check_size(h)?;
    if fixed_end >= h.n() {
        return Err(Error::VertexOutOfRange {
            vertex: fixed_end,
            n: h.n(),
        });
    }
    let mut starts = VertexSet::EMPTY;
    for s in (0..h.n()).filter(|&s| s != fixed_end) {
        let mut middle: Vec<usize> = (0..h.n()).filter(|&v| v != s && v != fixed_end).collect();
        let hit = any_permutation(&mut middle, &mut |perm| {
            let order: Vec<usize> = std::iter::once(s)
                .chain(perm.iter().copied())
                .chain(std::iter::once(fixed_end))
                .collect();
            let pairs: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
            distinct_representatives(h, &pairs).is_some()
        });
        if hit {
            starts.insert(s);
        }
    }
    Ok(starts)
}

/// Some Hamiltonian Berge path, found by enumeration.
pub fn hamiltonian_path_bruteforce(h: &Hypergraph) -> Result<Option<BergePath>> {
    check_size(h)?;
    let mut order: Vec<usize> = (0..h.n()).collect();
    let mut found = None;
    any_permutation(&mut order, &mut |perm| {
        let pairs: Vec<(usize, usize)> = perm.windows(2).map(|w| (w[0], w[1])).collect();
        match distinct_representatives(h, &pairs) {
            Some(edges) => {
                found = Some(BergePath::new(perm.to_vec(), edges));
                true
            }
            None => false,
        }
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::path::{verify_berge_cycle, verify_berge_path};

    #[test]
    fn permutations_are_all_visited() {
        let mut items = vec![0, 1, 2, 3];
        let mut seen = std::collections::HashSet::new();
        any_permutation(&mut items, &mut |p| {
            seen.insert(p.to_vec());
            false
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn oracle_examples() {
        let single = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        assert!(!is_hamiltonian_bruteforce(&single).unwrap());

        let triangle = Hypergraph::new(3, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let c = hamiltonian_cycle_bruteforce(&triangle).unwrap().unwrap();
        assert_eq!(verify_berge_cycle(&triangle, &c), Ok(()));

        let (h1, _) = constructions::example1(7, 3, 1).unwrap();
        assert!(!is_hamiltonian_bruteforce(&h1).unwrap());

        let big = Hypergraph::complete_uniform(9, 2).unwrap();
        assert!(is_hamiltonian_bruteforce(&big).is_err());
    }

    #[test]
    fn path_oracles() {
        let h = Hypergraph::new(4, [vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let p = hamiltonian_path_bruteforce(&h).unwrap().unwrap();
        assert_eq!(verify_berge_path(&h, &p), Ok(()));
        assert_eq!(hamiltonian_path_starts(&h, 3).unwrap().to_vec(), vec![0]);
        assert_eq!(hamiltonian_path_starts(&h, 1).unwrap(), VertexSet::EMPTY);
    }
}
