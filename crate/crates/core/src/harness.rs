//! Campaigns: sampled theorem verification, the sharpness suite over the
//! extremal families, solver-vs-oracle equivalence and the counterexample
//! search for the conjectured weaker condition.
//!
//! Every trial draws its own seed from `(master seed, trial index)`, so a
//! report does not depend on how trials are scheduled across threads.

use std::collections::HashSet;
use std::fmt;

use rand::seq::{index, SliceRandom};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, VertexSet, MAX_VERTICES};
use crate::combinatorics::{binomial_u64, k_subsets};
use crate::conditions::{self, ConditionReport, ConditionTag, Theorem};
use crate::constructions::{self, Family};
use crate::error::{Error, Result};
use crate::hypergraph::{DegreeSequence, Hypergraph};
use crate::path::verify_berge_cycle;
use crate::solver::{
    find_hamiltonian_berge_cycle, is_hamiltonian_bruteforce, Outcome, SearchBudget,
    BRUTEFORCE_MAX_N,
};

/// Largest `n` for non-uniform sampling (all `2^n` subsets are candidates).
pub const NONUNIFORM_SAMPLE_MAX_N: usize = 20;

/// Cap on the number of candidate edges a sampler will enumerate.
const MAX_CANDIDATES: u64 = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniformity {
    Uniform(usize),
    /// Any edge of size at least 2.
    NonUniform,
}

/// How a trial hypergraph is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Every candidate edge independently with probability `p`.
    Bernoulli { p: f64 },
    /// Start from `Bernoulli { p }`, then keep adding a random new edge at a
    /// lowest-degree vertex until the degree sequence satisfies `target`.
    /// Non-uniform targets are checked in forced mode.
    DenseFloor { p: f64, target: Theorem },
    /// A randomly relabeled member of `family` (random valid `k`) plus every
    /// missing edge independently with probability `p`.
    Planted { family: Family, p: f64 },
    /// Aims at the gap between the conjectured condition and conditions
    /// (1)-(3). A random set `L` of `low` vertices is kept sparse: edges meet
    /// `L` at most once, and `L` vertices are lifted to a random degree
    /// between `r` and `C(low, r-1) + 1`. A random set of the other vertices
    /// is then raised, lowest degree first, with edges avoiding `L` until the
    /// conjectured condition holds. Vertices in neither set are never
    /// targeted, which leaves room for a middle band of degrees.
    Skewed { low: usize, p: f64 },
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Bernoulli { p } => write!(f, "bernoulli(p={p})"),
            Profile::DenseFloor { p, target } => write!(f, "dense-floor(p={p},target={target})"),
            Profile::Planted { family, p } => write!(f, "planted(family={family},p={p})"),
            Profile::Skewed { low, p } => write!(f, "skewed(low={low},p={p})"),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Infeasible(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

struct Builder {
    n: usize,
    uniformity: Uniformity,
    edges: HashSet<VertexSet>,
    degree: Vec<usize>,
}

impl Builder {
    fn new(n: usize, uniformity: Uniformity) -> Self {
        Builder {
            n,
            uniformity,
            edges: HashSet::new(),
            degree: vec![0; n],
        }
    }

    fn insert(&mut self, e: VertexSet) -> bool {
        if !self.edges.insert(e) {
            return false;
        }
        for v in e.iter() {
            self.degree[v] += 1;
        }
        true
    }

    fn candidates(&self) -> Box<dyn Iterator<Item = VertexSet>> {
        let all = BitSet::prefix(self.n);
        match self.uniformity {
            Uniformity::Uniform(r) => Box::new(k_subsets(all, r)),
            Uniformity::NonUniform => Box::new(
                (0u64..1 << self.n)
                    .map(BitSet::from_bits)
                    .filter(|s| s.len() >= 2),
            ),
        }
    }

    fn bernoulli(&mut self, p: f64, keep: impl Fn(VertexSet) -> bool, rng: &mut ChaCha8Rng) {
        if p <= 0.0 {
            return;
        }
        for e in self.candidates() {
            if rng.gen_bool(p) && keep(e) {
                self.insert(e);
            }
        }
    }

    /// A uniformly random missing edge through `v` avoiding `forbid`, if
    /// there is one.
    fn missing_edge_at(
        &self,
        v: usize,
        forbid: VertexSet,
        rng: &mut ChaCha8Rng,
    ) -> Option<VertexSet> {
        let others: Vec<usize> = (0..self.n)
            .filter(|&u| u != v && !forbid.contains(u))
            .collect();
        let size_range = match self.uniformity {
            Uniformity::Uniform(r) => r..=r,
            Uniformity::NonUniform => 2..=others.len() + 1,
        };
        if size_range.start() - 1 > others.len() || size_range.is_empty() {
            return None;
        }
        let draw = |rng: &mut ChaCha8Rng| -> VertexSet {
            let size = rng.gen_range(size_range.clone());
            let mut e = VertexSet::singleton(v);
            for i in index::sample(rng, others.len(), size - 1) {
                e.insert(others[i]);
            }
            e
        };
        for _ in 0..64 {
            let e = draw(rng);
            if !self.edges.contains(&e) {
                return Some(e);
            }
        }
        let missing: Vec<VertexSet> = self
            .candidates()
            .filter(|e| {
                e.contains(v) && e.intersection(forbid).is_empty() && !self.edges.contains(e)
            })
            .collect();
        missing.choose(rng).copied()
    }

    fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_unsorted(self.degree.iter().map(|&d| d as u64).collect())
    }

    fn finish(self) -> Result<Hypergraph> {
        Hypergraph::from_sets(self.n, self.edges)
    }
}

fn floor_checker(target: Theorem, uniformity: Uniformity) -> Result<(Option<usize>, bool)> {
    match (target, uniformity) {
        (Theorem::Posa | Theorem::Chvatal, Uniformity::Uniform(2)) => Ok((None, false)),
        (Theorem::RUniform | Theorem::Conjecture, Uniformity::Uniform(r)) => Ok((Some(r), false)),
        (Theorem::NonUniform, Uniformity::NonUniform) => Ok((None, true)),
        _ => Err(Error::Infeasible(format!(
            "target {target} does not match {uniformity:?} sampling"
        ))),
    }
}

/// Draws one simple hypergraph; deterministic in `(n, uniformity, profile, seed)`.
pub fn sample_hypergraph(
    n: usize,
    uniformity: Uniformity,
    profile: &Profile,
    seed: u64,
) -> Result<Hypergraph> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Infeasible(format!(
            "need 1 <= n <= {MAX_VERTICES}, got {n}"
        )));
    }
    match uniformity {
        Uniformity::Uniform(r) => {
            if r == 0 || r > n {
                return Err(Error::Infeasible(format!("need 1 <= r <= n, got r = {r}")));
            }
            if binomial_u64(n as u64, r as u64) > MAX_CANDIDATES {
                return Err(Error::Infeasible(format!(
                    "C({n}, {r}) candidate edges is too many"
                )));
            }
        }
        Uniformity::NonUniform => {
            if !(2..=NONUNIFORM_SAMPLE_MAX_N).contains(&n) {
                return Err(Error::Infeasible(format!(
                    "non-uniform sampling needs 2 <= n <= {NONUNIFORM_SAMPLE_MAX_N}, got {n}"
                )));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new(n, uniformity);
    match *profile {
        Profile::Bernoulli { p } => {
            check_probability(p)?;
            b.bernoulli(p, |_| true, &mut rng);
        }
        Profile::DenseFloor { p, target } => {
            check_probability(p)?;
            let (r, force) = floor_checker(target, uniformity)?;
            b.bernoulli(p, |_| true, &mut rng);
            loop {
                if conditions::check(target, &b.degree_sequence(), r, force)?.satisfied {
                    break;
                }
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                order.sort_by_key(|&v| b.degree[v]);
                let added = order
                    .iter()
                    .find_map(|&v| b.missing_edge_at(v, VertexSet::EMPTY, &mut rng));
                match added {
                    Some(e) => {
                        b.insert(e);
                    }
                    None => break,
                }
            }
        }
        Profile::Planted { family, p } => {
            check_probability(p)?;
            let Uniformity::Uniform(r) = uniformity else {
                return Err(Error::Infeasible("planted profiles are uniform".into()));
            };
            let options: Vec<Option<usize>> = constructions::parameter_grid(family, n)
                .into_iter()
                .filter(|&(gn, gr, _)| gn == n && gr == r)
                .map(|(_, _, k)| k)
                .collect();
            let Some(&k) = options.choose(&mut rng) else {
                return Err(Error::Infeasible(format!(
                    "no {family} member with n = {n}, r = {r}"
                )));
            };
            let (base, _) = constructions::generate(family, n, r, k)?;
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            for &e in base.relabel(&perm)?.edges() {
                b.insert(e);
            }
            if p > 0.0 {
                let missing: Vec<VertexSet> =
                    b.candidates().filter(|e| !b.edges.contains(e)).collect();
                for e in missing {
                    if rng.gen_bool(p) {
                        b.insert(e);
                    }
                }
            }
        }
        Profile::Skewed { low, p } => {
            check_probability(p)?;
            let Uniformity::Uniform(r) = uniformity else {
                return Err(Error::Infeasible("skewed profiles are uniform".into()));
            };
            if low == 0 || low >= n || r < 3 || n <= 2 * r {
                return Err(Error::Infeasible(format!(
                    "skewed profile needs 0 < low < n, r >= 3 and n > 2r, got low = {low}, n = {n}, r = {r}"
                )));
            }
            let mut shuffled: Vec<usize> = (0..n).collect();
            shuffled.shuffle(&mut rng);
            let l: VertexSet = shuffled[..low].iter().copied().collect();
            let high_count = rng.gen_range(1..=n - low);
            let high: VertexSet = shuffled[low..low + high_count].iter().copied().collect();
            let not_high = BitSet::prefix(n).difference(high);
            // up to the largest degree that still fails conditions (2)/(3) at index `low`
            let cap = binomial_u64(low as u64, r as u64 - 1) as usize + 1;
            let lift = rng.gen_range(r..=cap.max(r));
            b.bernoulli(p, |e| e.intersection(l).len() <= 1, &mut rng);
            loop {
                if conditions::conjecture_r_uniform(&b.degree_sequence(), r)?.satisfied {
                    break;
                }
                let mut lifted = l.iter().filter(|&v| b.degree[v] < lift).collect::<Vec<_>>();
                lifted.shuffle(&mut rng);
                let mut added = lifted.iter().find_map(|&v| {
                    let own = VertexSet::singleton(v);
                    b.missing_edge_at(v, not_high.difference(own), &mut rng)
                        .or_else(|| b.missing_edge_at(v, l.difference(own), &mut rng))
                });
                if added.is_none() {
                    // raise the high set only; the rest of the outside may join edges
                    let mut order: Vec<usize> = high.iter().collect();
                    order.shuffle(&mut rng);
                    order.sort_by_key(|&v| b.degree[v]);
                    added = order
                        .iter()
                        .find_map(|&v| b.missing_edge_at(v, l, &mut rng));
                }
                match added {
                    Some(e) => {
                        b.insert(e);
                    }
                    None => break,
                }
            }
        }
    }
    b.finish()
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index as u64);
    rng.next_u64()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    /// Condition-satisfying samples must be Hamiltonian.
    Verify { theorem: Theorem, force: bool },
    /// Every family member (optionally one family) on the grid.
    Sharpness { family: Option<Family> },
    /// Samples satisfying the conjectured condition but not conditions (1)-(3).
    Conjecture,
    /// The exact solver against the brute-force oracle.
    Oracle,
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CampaignKind::Verify { theorem, force } => {
                write!(f, "verify theorem={theorem}")?;
                if *force {
                    f.write_str(" forced")?;
                }
                Ok(())
            }
            CampaignKind::Sharpness { family: Some(fam) } => write!(f, "sharpness family={fam}"),
            CampaignKind::Sharpness { family: None } => f.write_str("sharpness family=all"),
            CampaignKind::Conjecture => f.write_str("conjecture"),
            CampaignKind::Oracle => f.write_str("oracle"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub n: usize,
    /// Uniformity; `None` means non-uniform for sampling campaigns and any
    /// `r` for the sharpness suite.
    pub r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub kind: CampaignKind,
    /// Trial `i` uses point `i % grid.len()`.
    pub grid: Vec<GridPoint>,
    /// Restricts the sharpness suite to one `k`.
    pub k: Option<usize>,
    /// Ignored by the sharpness suite, which runs one trial per family member.
    pub samples: usize,
    /// Trial `i` uses profile `(i / grid.len()) % profiles.len()`.
    pub profiles: Vec<Profile>,
    pub seed: u64,
    pub budget: SearchBudget,
    /// Worker threads; trials are independent, so the report does not depend on it.
    #[serde(skip)]
    pub threads: usize,
}

impl CampaignConfig {
    /// Sampled verification of `theorem` at one `(n, r)`, with dense-floor
    /// profiles at three base densities.
    pub fn verify(theorem: Theorem, n: usize, r: Option<usize>, samples: usize, seed: u64) -> Self {
        let force = theorem == Theorem::NonUniform && n <= 40;
        let r = match theorem {
            Theorem::Posa | Theorem::Chvatal => Some(2),
            Theorem::NonUniform => None,
            _ => r,
        };
        CampaignConfig {
            kind: CampaignKind::Verify { theorem, force },
            grid: vec![GridPoint { n, r }],
            k: None,
            samples,
            profiles: [0.0, 0.1, 0.3]
                .into_iter()
                .map(|p| Profile::DenseFloor { p, target: theorem })
                .collect(),
            seed,
            budget: SearchBudget::default(),
            threads: 1,
        }
    }

    /// All family members with `n <= max_n`.
    pub fn sharpness(
        family: Option<Family>,
        max_n: usize,
        r: Option<usize>,
        k: Option<usize>,
    ) -> Self {
        CampaignConfig {
            kind: CampaignKind::Sharpness { family },
            grid: (1..=max_n).map(|n| GridPoint { n, r }).collect(),
            k,
            samples: 0,
            profiles: Vec::new(),
            seed: 0,
            budget: SearchBudget::default(),
            threads: 1,
        }
    }

    /// Counterexample search at `(n, r)`: floors aimed at the conjectured
    /// condition, skewed samples with a sparse low set of each size from `r`
    /// to `n/2 + 1`, and perturbed members of each extremal family.
    pub fn conjecture(n: usize, r: usize, samples: usize, seed: u64) -> Self {
        let mut profiles = vec![
            Profile::DenseFloor {
                p: 0.0,
                target: Theorem::Conjecture,
            },
            Profile::DenseFloor {
                p: 0.15,
                target: Theorem::Conjecture,
            },
        ];
        for low in r..=(n / 2 + 1).min(n - 1) {
            profiles.push(Profile::Skewed { low, p: 0.0 });
            profiles.push(Profile::Skewed { low, p: 0.1 });
        }
        for family in Family::all() {
            let exists = constructions::parameter_grid(family, n)
                .iter()
                .any(|&(gn, gr, _)| gn == n && gr == r);
            if exists {
                profiles.push(Profile::Planted { family, p: 0.05 });
            }
        }
        CampaignConfig {
            kind: CampaignKind::Conjecture,
            grid: vec![GridPoint { n, r: Some(r) }],
            k: None,
            samples,
            profiles,
            seed,
            budget: SearchBudget::default(),
            threads: 1,
        }
    }

    /// Oracle equivalence over `grid` at mixed densities.
    pub fn oracle(grid: Vec<GridPoint>, samples: usize, seed: u64) -> Self {
        CampaignConfig {
            kind: CampaignKind::Oracle,
            grid,
            k: None,
            samples,
            profiles: [0.2, 0.35, 0.5, 0.7]
                .into_iter()
                .map(|p| Profile::Bernoulli { p })
                .collect(),
            seed,
            budget: SearchBudget::default(),
            threads: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::precondition("parameter grid is empty"));
        }
        if matches!(self.kind, CampaignKind::Sharpness { .. }) {
            return Ok(());
        }
        if self.samples == 0 {
            return Err(Error::precondition("sample count must be positive"));
        }
        if self.profiles.is_empty() {
            return Err(Error::precondition("no sampling profile"));
        }
        for p in &self.grid {
            let n = p.n;
            match self.kind {
                CampaignKind::Verify { theorem, force } => match theorem {
                    Theorem::Posa | Theorem::Chvatal => {
                        if n < 3 || p.r != Some(2) {
                            return Err(Error::precondition(format!(
                                "{theorem} needs graphs (r = 2) with n >= 3"
                            )));
                        }
                    }
                    Theorem::RUniform | Theorem::Conjecture => {
                        let r = p.r.ok_or_else(|| Error::precondition("r is required"))?;
                        if r < 3 || n <= 2 * r {
                            return Err(Error::precondition(format!(
                                "{theorem} needs r >= 3 and n > 2r, got n = {n}, r = {r}"
                            )));
                        }
                    }
                    Theorem::NonUniform => {
                        if p.r.is_some() {
                            return Err(Error::precondition("non-uniform sampling takes no r"));
                        }
                        if n <= 40 && !force {
                            return Err(Error::precondition(format!(
                                "non-uniform conditions need n > 40, got {n} (force to override)"
                            )));
                        }
                        if n < 3 {
                            return Err(Error::precondition("need n >= 3"));
                        }
                    }
                },
                CampaignKind::Conjecture => {
                    let r = p.r.ok_or_else(|| Error::precondition("r is required"))?;
                    if r < 3 || n <= 2 * r {
                        return Err(Error::precondition(format!(
                            "conjecture search needs r >= 3 and n > 2r, got n = {n}, r = {r}"
                        )));
                    }
                }
                CampaignKind::Oracle => {
                    if !(3..=BRUTEFORCE_MAX_N).contains(&n) {
                        return Err(Error::precondition(format!(
                            "oracle campaigns need 3 <= n <= {BRUTEFORCE_MAX_N}, got {n}"
                        )));
                    }
                }
                CampaignKind::Sharpness { .. } => {}
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
    /// The trial's hypothesis did not hold, so nothing was asserted.
    Vacuous,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Unknown => "unknown",
            Verdict::Vacuous => "vacuous",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub r: Option<usize>,
    pub family: Option<Family>,
    pub k: Option<usize>,
    pub profile: Option<String>,
    pub edges: usize,
    pub degrees: DegreeSequence,
    /// Whether the condition under test held.
    pub condition: Option<bool>,
    pub violated: Vec<ConditionTag>,
    pub solver: Option<String>,
    pub nodes: u64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl fmt::Display for TrialRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "trial index={} n={}", self.index, self.n)?;
        match self.r {
            Some(r) => write!(f, " r={r}")?,
            None => f.write_str(" r=-")?,
        }
        if let Some(fam) = self.family {
            write!(f, " family={fam}")?;
        }
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(p) = &self.profile {
            write!(f, " profile={p} seed={}", self.seed)?;
        }
        write!(f, " edges={} degrees={}", self.edges, self.degrees)?;
        match self.condition {
            Some(true) => f.write_str(" condition=satisfied")?,
            Some(false) => f.write_str(" condition=violated")?,
            None => {}
        }
        if !self.violated.is_empty() {
            let tags: Vec<String> = self.violated.iter().map(|t| t.to_string()).collect();
            write!(f, " violated={}", tags.join(","))?;
        }
        if let Some(s) = &self.solver {
            write!(f, " solver={s} nodes={}", self.nodes)?;
        }
        write!(f, " verdict={}", self.verdict)?;
        if let Some(note) = &self.note {
            write!(f, " note=\"{note}\"")?;
        }
        Ok(())
    }
}

/// A sample satisfying the condition under test with no Hamiltonian Berge
/// cycle. Everything needed to re-check it is stored here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub theorem: Theorem,
    pub r: Option<usize>,
    pub force: bool,
    pub hypergraph: Hypergraph,
    pub report: ConditionReport,
    pub none_exists: bool,
    pub budget: SearchBudget,
    /// Which component is most likely wrong.
    pub suspect: String,
}

impl Counterexample {
    /// Re-runs the checker and the solver from the stored artifacts and
    /// returns whether both verdicts are reproduced.
    pub fn reverify(&self) -> Result<bool> {
        let d = self.hypergraph.degree_sequence();
        let report = conditions::check(self.theorem, &d, self.r, self.force)?;
        if report != self.report || !report.satisfied {
            return Ok(false);
        }
        let search = find_hamiltonian_berge_cycle(&self.hypergraph, &self.budget)?;
        Ok((search.outcome == Outcome::NoneExists) == self.none_exists)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub vacuous: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.unknown + self.vacuous
    }

    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Unknown => self.unknown += 1,
            Verdict::Vacuous => self.vacuous += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub trials: Vec<TrialRecord>,
    pub counts: Counts,
    pub counterexamples: Vec<Counterexample>,
}

impl CampaignReport {
    fn assemble(
        config: CampaignConfig,
        mut results: Vec<(TrialRecord, Option<Counterexample>)>,
    ) -> Self {
        results.sort_by_key(|(t, _)| t.index);
        let mut counts = Counts::default();
        let mut trials = Vec::with_capacity(results.len());
        let mut counterexamples = Vec::new();
        for (t, c) in results {
            counts.add(t.verdict);
            trials.push(t);
            counterexamples.extend(c);
        }
        CampaignReport {
            config,
            trials,
            counts,
            counterexamples,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for CampaignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "campaign {}", c.kind)?;
        let grid: Vec<String> = c
            .grid
            .iter()
            .map(|p| match p.r {
                Some(r) => format!("({},{r})", p.n),
                None => format!("({},-)", p.n),
            })
            .collect();
        writeln!(f, "grid {}", grid.join(" "))?;
        if let Some(k) = c.k {
            writeln!(f, "k {k}")?;
        }
        if !matches!(c.kind, CampaignKind::Sharpness { .. }) {
            writeln!(f, "samples {}", c.samples)?;
            writeln!(f, "seed {}", c.seed)?;
            let profiles: Vec<String> = c.profiles.iter().map(|p| p.to_string()).collect();
            writeln!(f, "profiles {}", profiles.join(" "))?;
        }
        writeln!(f, "budget-nodes {}", c.budget.max_nodes)?;
        for t in &self.trials {
            writeln!(f, "{t}")?;
        }
        writeln!(f, "summary")?;
        writeln!(f, "  trials {}", self.counts.total())?;
        writeln!(f, "  pass {}", self.counts.pass)?;
        writeln!(f, "  fail {}", self.counts.fail)?;
        writeln!(f, "  unknown {}", self.counts.unknown)?;
        writeln!(f, "  vacuous {}", self.counts.vacuous)?;
        writeln!(f, "  counterexamples {}", self.counterexamples.len())?;
        for x in &self.counterexamples {
            writeln!(
                f,
                "counterexample trial={} theorem={} suspect=\"{}\"",
                x.trial, x.theorem, x.suspect
            )?;
            let edges: Vec<String> = x
                .hypergraph
                .edges()
                .iter()
                .map(|e| {
                    let v: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                    v.join(" ")
                })
                .collect();
            writeln!(f, "  n {} edges [{}]", x.hypergraph.n(), edges.join(", "))?;
            writeln!(f, "  degrees {}", x.hypergraph.degree_sequence())?;
        }
        Ok(())
    }
}

/// Runs the campaign described by `config`.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    match config.kind {
        CampaignKind::Sharpness { family } => sharpness(config, family),
        _ => sampled(config),
    }
}

pub fn verify_theorem_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    if !matches!(config.kind, CampaignKind::Verify { .. }) {
        return Err(Error::precondition("not a verification campaign"));
    }
    run_campaign(config)
}

pub fn sharpness_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    if !matches!(config.kind, CampaignKind::Sharpness { .. }) {
        return Err(Error::precondition("not a sharpness campaign"));
    }
    run_campaign(config)
}

pub fn conjecture_search(config: &CampaignConfig) -> Result<CampaignReport> {
    if config.kind != CampaignKind::Conjecture {
        return Err(Error::precondition("not a conjecture search"));
    }
    run_campaign(config)
}

pub fn oracle_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    if config.kind != CampaignKind::Oracle {
        return Err(Error::precondition("not an oracle campaign"));
    }
    run_campaign(config)
}

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(job))
}

fn sampled(config: &CampaignConfig) -> Result<CampaignReport> {
    let results = in_pool(config.threads, || {
        (0..config.samples)
            .into_par_iter()
            .map(|i| sampled_trial(config, i))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(CampaignReport::assemble(config.clone(), results))
}

fn uniformity_of(p: GridPoint) -> Uniformity {
    match p.r {
        Some(r) => Uniformity::Uniform(r),
        None => Uniformity::NonUniform,
    }
}

fn sampled_trial(
    config: &CampaignConfig,
    index: usize,
) -> Result<(TrialRecord, Option<Counterexample>)> {
    let point = config.grid[index % config.grid.len()];
    let profile = config.profiles[(index / config.grid.len()) % config.profiles.len()];
    let seed = trial_seed(config.seed, index);
    let h = sample_hypergraph(point.n, uniformity_of(point), &profile, seed)?;
    let degrees = h.degree_sequence();
    let mut record = TrialRecord {
        index,
        seed,
        n: point.n,
        r: point.r,
        family: None,
        k: None,
        profile: Some(profile.to_string()),
        edges: h.edge_count(),
        degrees: degrees.clone(),
        condition: None,
        violated: Vec::new(),
        solver: None,
        nodes: 0,
        verdict: Verdict::Vacuous,
        note: None,
    };

    let (theorem, force) = match config.kind {
        CampaignKind::Verify { theorem, force } => (theorem, force),
        CampaignKind::Conjecture => (Theorem::Conjecture, false),
        CampaignKind::Oracle => return Ok((oracle_trial(&h, config, record)?, None)),
        CampaignKind::Sharpness { .. } => unreachable!("sharpness is not sampled"),
    };
    let report = conditions::check(theorem, &degrees, point.r, force)?;
    record.condition = Some(report.satisfied);
    record.violated = report.violated_tags();
    if !report.satisfied {
        return Ok((record, None));
    }
    if theorem == Theorem::Conjecture {
        let r = point.r.expect("validated");
        let posa = conditions::posa_r_uniform(&degrees, r)?;
        if posa.satisfied {
            record.note = Some("conditions (1)-(3) hold".into());
            return Ok((record, None));
        }
        record.violated = posa.violated_tags();
    }

    let search = find_hamiltonian_berge_cycle(&h, &config.budget)?;
    record.solver = Some(search.outcome.label().to_string());
    record.nodes = search.nodes;
    let counterexample = match &search.outcome {
        Outcome::Cycle(c) => {
            if verify_berge_cycle(&h, c).is_ok() {
                record.verdict = Verdict::Pass;
            } else {
                record.verdict = Verdict::Fail;
                record.note = Some("solver certificate does not verify".into());
            }
            None
        }
        Outcome::Unknown => {
            record.verdict = Verdict::Unknown;
            None
        }
        Outcome::NoneExists => {
            record.verdict = Verdict::Fail;
            let suspect = suspect_for(&h, &degrees, theorem);
            record.note = Some(format!("suspect {suspect}"));
            Some(Counterexample {
                trial: index,
                theorem,
                r: point.r,
                force,
                hypergraph: h,
                report,
                none_exists: true,
                budget: config.budget.clone(),
                suspect,
            })
        }
    };
    Ok((record, counterexample))
}

/// Blames a component for a condition-satisfying sample proven non-Hamiltonian.
fn suspect_for(h: &Hypergraph, degrees: &DegreeSequence, theorem: Theorem) -> String {
    if (3..=BRUTEFORCE_MAX_N).contains(&h.n()) && is_hamiltonian_bruteforce(h).unwrap_or(false) {
        return "solver".into();
    }
    let counted: Vec<u64> = (0..h.n())
        .map(|v| h.edges().iter().filter(|e| e.contains(v)).count() as u64)
        .collect();
    if DegreeSequence::from_unsorted(counted) != *degrees {
        return "generator".into();
    }
    match theorem {
        Theorem::Conjecture | Theorem::NonUniform => "none: candidate counterexample".into(),
        _ => "checker".into(),
    }
}

fn oracle_trial(
    h: &Hypergraph,
    config: &CampaignConfig,
    mut record: TrialRecord,
) -> Result<TrialRecord> {
    let search = find_hamiltonian_berge_cycle(h, &config.budget)?;
    let oracle = is_hamiltonian_bruteforce(h)?;
    record.solver = Some(search.outcome.label().to_string());
    record.nodes = search.nodes;
    record.verdict = match (&search.outcome, oracle) {
        (Outcome::Cycle(c), true) if verify_berge_cycle(h, c).is_ok() => Verdict::Pass,
        (Outcome::NoneExists, false) => Verdict::Pass,
        (Outcome::Unknown, _) => Verdict::Unknown,
        _ => Verdict::Fail,
    };
    if record.verdict == Verdict::Fail {
        record.note = Some(format!("oracle says hamiltonian={oracle}"));
    }
    Ok(record)
}

fn sharpness(config: &CampaignConfig, family: Option<Family>) -> Result<CampaignReport> {
    let families: Vec<Family> = match family {
        Some(f) => vec![f],
        None => Family::all().to_vec(),
    };
    let mut points = Vec::new();
    for &fam in &families {
        for p in &config.grid {
            for (n, r, k) in constructions::parameter_grid(fam, p.n) {
                let keep = n == p.n
                    && p.r.is_none_or(|pr| pr == r)
                    && config.k.is_none_or(|ck| k == Some(ck));
                if keep {
                    points.push((fam, n, r, k));
                }
            }
        }
    }
    let results = in_pool(config.threads, || {
        points
            .par_iter()
            .enumerate()
            .map(|(i, &(fam, n, r, k))| sharpness_trial(config, i, fam, n, r, k))
            .collect::<Result<Vec<_>>>()
    })??;
    let mut config = config.clone();
    config.samples = results.len();
    Ok(CampaignReport::assemble(config, results))
}

fn sharpness_trial(
    config: &CampaignConfig,
    index: usize,
    family: Family,
    n: usize,
    r: usize,
    k: Option<usize>,
) -> Result<(TrialRecord, Option<Counterexample>)> {
    let (h, spec) = constructions::generate(family, n, r, k)?;
    let degrees = h.degree_sequence();
    let report = conditions::posa_r_uniform(&degrees, r)?;
    let tags = report.violated_tags();
    let search = find_hamiltonian_berge_cycle(&h, &config.budget)?;

    let mut problems = Vec::new();
    if degrees != spec.predicted_degree_sequence() {
        problems.push("degree sequence differs from prediction".to_string());
    }
    if tags != [family.designated_tag()] {
        problems.push(format!("expected only {}", family.designated_tag()));
    }
    let verdict = match (&search.outcome, problems.is_empty()) {
        (Outcome::NoneExists, true) => Verdict::Pass,
        (Outcome::Unknown, true) => Verdict::Unknown,
        (Outcome::Cycle(_), _) => {
            problems.push("found a Hamiltonian Berge cycle".into());
            Verdict::Fail
        }
        _ => Verdict::Fail,
    };
    let record = TrialRecord {
        index,
        seed: 0,
        n,
        r: Some(r),
        family: Some(family),
        k,
        profile: None,
        edges: h.edge_count(),
        degrees,
        condition: Some(report.satisfied),
        violated: tags,
        solver: Some(search.outcome.label().to_string()),
        nodes: search.nodes,
        verdict,
        note: (!problems.is_empty()).then(|| problems.join("; ")),
    };
    Ok((record, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_extremes() {
        let full = sample_hypergraph(5, Uniformity::Uniform(3), &Profile::Bernoulli { p: 1.0 }, 1)
            .unwrap();
        assert_eq!(full, Hypergraph::complete_uniform(5, 3).unwrap());
        assert_eq!(full.edge_count(), 10);
        let empty = sample_hypergraph(5, Uniformity::Uniform(3), &Profile::Bernoulli { p: 0.0 }, 1)
            .unwrap();
        assert_eq!(empty.edge_count(), 0);
        let a = sample_hypergraph(8, Uniformity::Uniform(3), &Profile::Bernoulli { p: 0.4 }, 9)
            .unwrap();
        let b = sample_hypergraph(8, Uniformity::Uniform(3), &Profile::Bernoulli { p: 0.4 }, 9)
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.uniformity(), Some(3));
    }

    #[test]
    fn sampler_rejects_infeasible() {
        let bern = |p| Profile::Bernoulli { p };
        assert!(sample_hypergraph(64, Uniformity::Uniform(2), &bern(0.1), 0).is_err());
        assert!(sample_hypergraph(5, Uniformity::Uniform(6), &bern(0.1), 0).is_err());
        assert!(sample_hypergraph(5, Uniformity::Uniform(2), &bern(1.5), 0).is_err());
        assert!(sample_hypergraph(21, Uniformity::NonUniform, &bern(0.1), 0).is_err());
        let floor = Profile::DenseFloor {
            p: 0.0,
            target: Theorem::RUniform,
        };
        assert!(sample_hypergraph(7, Uniformity::NonUniform, &floor, 0).is_err());
        let planted = Profile::Planted {
            family: Family::H3,
            p: 0.0,
        };
        assert!(sample_hypergraph(7, Uniformity::Uniform(3), &planted, 0).is_err());
    }

    #[test]
    fn dense_floor_reaches_target() {
        for seed in 0..5 {
            let floor = Profile::DenseFloor {
                p: 0.05,
                target: Theorem::RUniform,
            };
            let h = sample_hypergraph(9, Uniformity::Uniform(3), &floor, seed).unwrap();
            assert!(
                conditions::posa_r_uniform(&h.degree_sequence(), 3)
                    .unwrap()
                    .satisfied
            );
            let floor = Profile::DenseFloor {
                p: 0.0,
                target: Theorem::NonUniform,
            };
            let h = sample_hypergraph(8, Uniformity::NonUniform, &floor, seed).unwrap();
            assert!(
                conditions::posa_nonuniform(&h.degree_sequence(), true)
                    .unwrap()
                    .satisfied
            );
            assert!(h.edges().iter().all(|e| e.len() >= 2));
        }
    }

    #[test]
    fn planted_contains_a_family_member() {
        let planted = Profile::Planted {
            family: Family::H3,
            p: 0.0,
        };
        let h = sample_hypergraph(10, Uniformity::Uniform(3), &planted, 3).unwrap();
        let (base, _) = constructions::example3(10, 3).unwrap();
        assert_eq!(h.edge_count(), base.edge_count());
        assert_eq!(h.degree_sequence(), base.degree_sequence());
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: HashSet<u64> = (0..100).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 100);
        assert_eq!(trial_seed(7, 3), trial_seed(7, 3));
        assert_ne!(trial_seed(7, 3), trial_seed(8, 3));
    }

    #[test]
    fn small_verify_campaign() {
        let cfg = CampaignConfig::verify(Theorem::RUniform, 7, Some(3), 12, 5);
        let report = verify_theorem_campaign(&cfg).unwrap();
        assert_eq!(report.counts.total(), 12);
        assert_eq!(report.counts.fail, 0);
        assert_eq!(report.counts.pass, 12);
        assert!(report.counterexamples.is_empty());
        let again = verify_theorem_campaign(&cfg).unwrap();
        assert_eq!(report.to_string(), again.to_string());
    }

    #[test]
    fn threads_do_not_change_report() {
        let mut cfg = CampaignConfig::conjecture(7, 3, 30, 11);
        let one = conjecture_search(&cfg).unwrap().to_string();
        cfg.threads = 3;
        assert_eq!(conjecture_search(&cfg).unwrap().to_string(), one);
    }

    #[test]
    fn sharpness_examples() {
        for (fam, n, k) in [
            (Family::H2, 9, Some(4)),
            (Family::H3, 10, None),
            (Family::H1, 8, Some(2)),
        ] {
            let cfg = CampaignConfig {
                grid: vec![GridPoint { n, r: Some(3) }],
                ..CampaignConfig::sharpness(Some(fam), n, Some(3), k)
            };
            let report = sharpness_campaign(&cfg).unwrap();
            assert_eq!(report.trials.len(), 1, "{fam}");
            assert_eq!(report.counts.pass, 1, "{report}");
        }
    }

    #[test]
    fn oracle_campaign_agrees() {
        let grid = vec![
            GridPoint { n: 5, r: Some(2) },
            GridPoint { n: 6, r: Some(3) },
        ];
        let report = oracle_campaign(&CampaignConfig::oracle(grid, 16, 2)).unwrap();
        assert_eq!(report.counts.pass, 16, "{report}");
    }

    #[test]
    fn counterexample_reverifies() {
        // a non-Hamiltonian sample dressed up as a refutation of the graph condition
        let h = Hypergraph::new(4, [vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let report = conditions::posa_graph(&h.degree_sequence()).unwrap();
        let x = Counterexample {
            trial: 0,
            theorem: Theorem::Posa,
            r: None,
            force: false,
            hypergraph: h,
            report,
            none_exists: true,
            budget: SearchBudget::default(),
            suspect: "checker".into(),
        };
        // the checker rejects it, so it does not re-verify
        assert!(!x.reverify().unwrap());
        let json = serde_json::to_string(&x).unwrap();
        let back: Counterexample = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn validation() {
        let mut cfg = CampaignConfig::verify(Theorem::RUniform, 6, Some(3), 10, 0);
        assert!(cfg.validate().is_err());
        cfg.grid[0].n = 7;
        assert!(cfg.validate().is_ok());
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
        let cfg = CampaignConfig {
            kind: CampaignKind::Verify {
                theorem: Theorem::NonUniform,
                force: false,
            },
            ..CampaignConfig::verify(Theorem::NonUniform, 8, None, 10, 0)
        };
        assert!(cfg.validate().is_err());
        assert!(
            CampaignConfig::oracle(vec![GridPoint { n: 9, r: Some(2) }], 1, 0)
                .validate()
                .is_err()
        );
    }
}
