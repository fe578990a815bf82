//! The three extremal families showing each `r`-uniform degree condition is
//! sharp: every member fails exactly one inequality instance and has no
//! Hamiltonian Berge cycle.
//!
//! Parts are contiguous index ranges: `V_1` starts at vertex 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet, MAX_VERTICES};
use crate::combinatorics::{binomial_u64, k_subsets};
use crate::conditions::ConditionTag;
use crate::error::{Error, Result};
use crate::hypergraph::{DegreeSequence, Hypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `k` vertices living in only `k` common edges.
    H1,
    /// `k` pairwise non-adjacent vertices whose neighborhood has size `k`.
    H2,
    /// `n/2 + 1` vertices, only one edge meeting two of them.
    H3,
}

impl Family {
    /// The condition this family is built to violate.
    pub fn designated_tag(self) -> ConditionTag {
        match self {
            Family::H1 => ConditionTag::Condition1,
            Family::H2 => ConditionTag::Condition2,
            Family::H3 => ConditionTag::Condition3,
        }
    }

    pub fn all() -> [Family; 3] {
        [Family::H1, Family::H2, Family::H3]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::H1 => "h1",
            Family::H2 => "h2",
            Family::H3 => "h3",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(Family::H1),
            "h2" => Ok(Family::H2),
            "h3" => Ok(Family::H3),
            other => Err(Error::precondition(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    /// Absent for H3.
    pub k: Option<usize>,
    /// `V_1`, `V_2` and, for H2, `V_3`.
    pub parts: Vec<VertexSet>,
    /// The single edge inside `V_1` (H3 only).
    pub special: Option<VertexSet>,
}

impl ConstructionSpec {
    pub fn new(family: Family, n: usize, r: usize, k: Option<usize>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::precondition(format!(
                "n = {n} exceeds {MAX_VERTICES}"
            )));
        }
        let range = |lo: usize, hi: usize| -> VertexSet { (lo..hi).collect() };
        match family {
            Family::H1 => {
                let k = k.ok_or_else(|| Error::precondition("h1 needs k"))?;
                if !(n > 2 * r && r > k && k > 0) {
                    return Err(Error::precondition(format!(
                        "h1 needs n > 2r > 2k > 0, got n={n} r={r} k={k}"
                    )));
                }
                let available = binomial_u64((n - k) as u64, (r - k) as u64);
                if k as u64 > available {
                    return Err(Error::Infeasible(format!(
                        "h1 needs {k} distinct supersets of V1 but only {available} exist"
                    )));
                }
                Ok(ConstructionSpec {
                    family,
                    n,
                    r,
                    k: Some(k),
                    parts: vec![range(0, k), range(k, n)],
                    special: None,
                })
            }
            Family::H2 => {
                let k = k.ok_or_else(|| Error::precondition("h2 needs k"))?;
                if !(3 <= r && r <= k && 2 * k < n) {
                    return Err(Error::precondition(format!(
                        "h2 needs 3 <= r <= k < n/2, got n={n} r={r} k={k}"
                    )));
                }
                Ok(ConstructionSpec {
                    family,
                    n,
                    r,
                    k: Some(k),
                    parts: vec![range(0, k), range(k, 2 * k), range(2 * k, n)],
                    special: None,
                })
            }
            Family::H3 => {
                if !(n.is_multiple_of(2) && 3 <= r && 2 * r < n) {
                    return Err(Error::precondition(format!(
                        "h3 needs even n and 3 <= r < n/2, got n={n} r={r}"
                    )));
                }
                Ok(ConstructionSpec {
                    family,
                    n,
                    r,
                    k: None,
                    parts: vec![range(0, n / 2 + 1), range(n / 2 + 1, n)],
                    special: Some(range(0, r)),
                })
            }
        }
    }

    pub fn part(&self, i: usize) -> VertexSet {
        self.parts[i]
    }

    /// H1's `k` edges through `V_1`: `V_1` plus each of the first `k`
    /// `(r-k)`-subsets of `V_2` in colex order.
    fn h1_supersets(&self) -> Vec<VertexSet> {
        let k = self.k.unwrap_or(0);
        k_subsets(self.parts[1], self.r - k)
            .take(k)
            .map(|s| s.union(self.parts[0]))
            .collect()
    }

    pub fn build(&self) -> Result<Hypergraph> {
        let all = VertexSet::prefix(self.n);
        let edges: Vec<VertexSet> = match self.family {
            Family::H1 => k_subsets(self.parts[1], self.r)
                .chain(self.h1_supersets())
                .collect(),
            Family::H2 => {
                let (v1, v2, v3) = (self.parts[0], self.parts[1], self.parts[2]);
                let cross = v1.iter().flat_map(|a| {
                    k_subsets(v2, self.r - 1).map(move |s| s.union(BitSet::singleton(a)))
                });
                cross.chain(k_subsets(v2.union(v3), self.r)).collect()
            }
            Family::H3 => {
                let v1 = self.parts[0];
                k_subsets(all, self.r)
                    .filter(|h| h.intersection(v1).len() <= 1)
                    .chain(self.special)
                    .collect()
            }
        };
        Hypergraph::from_sets(self.n, edges)
    }

    /// Degree sequence from the closed-form counts, without building edges.
    ///
    /// For H1 the `V_2` side depends on which supersets of `V_1` were
    /// chosen; those are counted from the same deterministic choice the
    /// generator makes.
    pub fn predicted_degree_sequence(&self) -> DegreeSequence {
        let (n, r) = (self.n as u64, self.r as u64);
        let c = binomial_u64;
        let mut values = Vec::with_capacity(self.n);
        match self.family {
            Family::H1 => {
                let k = self.k.unwrap_or(0) as u64;
                values.extend(std::iter::repeat_n(k, k as usize));
                let supersets = self.h1_supersets();
                for w in self.parts[1].iter() {
                    let extra = supersets.iter().filter(|s| s.contains(w)).count() as u64;
                    values.push(c(n - k - 1, r - 1) + extra);
                }
            }
            Family::H2 => {
                let k = self.k.unwrap_or(0) as u64;
                let v1 = c(k, r - 1);
                let v3 = c(n - k - 1, r - 1);
                let v2 = v3 + k * c(k - 1, r - 2);
                values.extend(std::iter::repeat_n(v1, k as usize));
                values.extend(std::iter::repeat_n(v3, (n - 2 * k) as usize));
                values.extend(std::iter::repeat_n(v2, k as usize));
            }
            Family::H3 => {
                let half = n / 2;
                let low = c(half - 1, r - 1);
                values.extend(std::iter::repeat_n(low, (half + 1 - r) as usize));
                values.extend(std::iter::repeat_n(low + 1, r as usize));
                let v2 = c(half - 2, r - 1) + (half + 1) * c(half - 2, r - 2);
                values.extend(std::iter::repeat_n(v2, (half - 1) as usize));
            }
        }
        DegreeSequence::from_unsorted(values)
    }
}

pub fn example1(n: usize, r: usize, k: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    let spec = ConstructionSpec::new(Family::H1, n, r, Some(k))?;
    Ok((spec.build()?, spec))
}

pub fn example2(n: usize, r: usize, k: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    let spec = ConstructionSpec::new(Family::H2, n, r, Some(k))?;
    Ok((spec.build()?, spec))
}

pub fn example3(n: usize, r: usize) -> Result<(Hypergraph, ConstructionSpec)> {
    let spec = ConstructionSpec::new(Family::H3, n, r, None)?;
    Ok((spec.build()?, spec))
}

pub fn generate(
    family: Family,
    n: usize,
    r: usize,
    k: Option<usize>,
) -> Result<(Hypergraph, ConstructionSpec)> {
    let spec = ConstructionSpec::new(family, n, r, k)?;
    Ok((spec.build()?, spec))
}

pub fn predicted_degree_sequence(spec: &ConstructionSpec) -> DegreeSequence {
    spec.predicted_degree_sequence()
}

/// Every valid `(n, r, k)` for `family` with `n <= max_n` and `r >= 3`
/// (the range where the uniform checker applies). `k` is `None` for H3.
pub fn parameter_grid(family: Family, max_n: usize) -> Vec<(usize, usize, Option<usize>)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in (3..).take_while(|&r| 2 * r < n) {
            match family {
                Family::H1 => out.extend((1..r).map(|k| (n, r, Some(k)))),
                Family::H2 => out.extend((r..).take_while(|&k| 2 * k < n).map(|k| (n, r, Some(k)))),
                Family::H3 if n % 2 == 0 => out.push((n, r, None)),
                Family::H3 => {}
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_shape() {
        let (h, spec) = example1(8, 3, 2).unwrap();
        assert_eq!(h.edge_count(), 22);
        assert_eq!(h.uniformity(), Some(3));
        let d = h.degree_sequence();
        assert_eq!(&d.values()[..2], &[2, 2]);
        for v in spec.part(0).iter() {
            assert_eq!(h.degree(v).unwrap(), 2);
        }
        assert_eq!(
            spec.predicted_degree_sequence(),
            DegreeSequence::new(d.values().to_vec()).unwrap()
        );

        let (h, _) = example1(7, 3, 1).unwrap();
        assert_eq!(h.degree(0).unwrap(), 1);
    }

    #[test]
    fn example1_rejects_bad_parameters() {
        assert!(example1(6, 3, 1).is_err());
        assert!(example1(9, 3, 3).is_err());
        assert!(example1(9, 3, 0).is_err());
    }

    #[test]
    fn example2_shape() {
        let (h, spec) = example2(9, 3, 4).unwrap();
        assert_eq!(h.uniformity(), Some(3));
        // 4 * C(4,2) cross edges and C(5,3) inside V2 u V3
        assert_eq!(h.edge_count(), 24 + 10);
        assert_eq!(
            h.degree_sequence().values(),
            &[6, 6, 6, 6, 6, 18, 18, 18, 18]
        );
        assert_eq!(
            spec.predicted_degree_sequence().values(),
            &[6, 6, 6, 6, 6, 18, 18, 18, 18]
        );
        assert!(example2(8, 3, 4).is_err());
        assert!(example2(9, 2, 4).is_err());
        assert!(example2(9, 4, 3).is_err());
    }

    #[test]
    fn example3_shape() {
        let (h, spec) = example3(10, 3).unwrap();
        assert_eq!(spec.special.unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(
            h.degree_sequence().values(),
            &[6, 6, 6, 7, 7, 7, 21, 21, 21, 21]
        );
        assert_eq!(
            spec.predicted_degree_sequence().values(),
            &[6, 6, 6, 7, 7, 7, 21, 21, 21, 21]
        );
        let v1 = spec.part(0);
        assert_eq!(
            h.edges()
                .iter()
                .filter(|e| e.intersection(v1).len() >= 2)
                .count(),
            1
        );
        assert!(example3(9, 3).is_err());
        assert!(example3(10, 5).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        for f in Family::all() {
            for (n, r, k) in parameter_grid(f, 10) {
                let a = generate(f, n, r, k).unwrap().0;
                let b = generate(f, n, r, k).unwrap().0;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn grid_contents() {
        assert_eq!(
            parameter_grid(Family::H3, 12),
            vec![
                (8, 3, None),
                (10, 3, None),
                (10, 4, None),
                (12, 3, None),
                (12, 4, None),
                (12, 5, None)
            ]
        );
        assert!(parameter_grid(Family::H2, 12).contains(&(9, 3, Some(4))));
        assert!(parameter_grid(Family::H1, 12).contains(&(8, 3, Some(2))));
        assert!(parameter_grid(Family::H1, 6).is_empty());
    }
}
