//! Degree-sequence certifiers: Pósa and Chvátal for graphs, the Pósa-type
//! conditions for `r`-uniform and non-uniform hypergraphs, and the
//! conjectured Chvátal-type weakening for `r`-uniform hypergraphs.
//!
//! Every checker is a pure function of the integer sequence and lists all
//! violated inequality instances, not just the first.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::DegreeSequence;

/// Which numbered inequality family an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionTag {
    /// `d_k > k` for `k < n/2`.
    Posa,
    /// `d_k <= k => d_{n-k} >= n-k` for `k < n/2`.
    Chvatal,
    /// `d_i > i` for `1 <= i < r`.
    Condition1,
    /// `d_i > C(i, r-1)` for `r <= i <= (n-1)/2`.
    Condition2,
    /// `d_{(n-2)/2} > C((n-2)/2, r-1) + 1` for even `n`.
    Condition3,
    /// `d_i > 2^i` for `1 <= i <= (n-1)/2`.
    Condition4,
    /// `d_{(n-2)/2} > 2^{(n-2)/2} + 1` for even `n`.
    Condition5,
    /// Conjecture: `d_i > i` for `1 <= i < r`.
    ConjectureLow,
    /// Conjecture: `d_i <= C(i, r-1) => d_{n-i} > C(n-i-1, r-1)`.
    ConjectureMid,
    /// Conjecture, even `n`: `d_{(n-2)/2} <= C((n-2)/2, r-1) + 1 =>
    /// d_{(n+2)/2} > C(n/2-2, r-1) + (n/2+1) C(n/2-2, r-2)`.
    ConjectureEven,
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionTag::Posa => "posa",
            ConditionTag::Chvatal => "chvatal",
            ConditionTag::Condition1 => "condition-1",
            ConditionTag::Condition2 => "condition-2",
            ConditionTag::Condition3 => "condition-3",
            ConditionTag::Condition4 => "condition-4",
            ConditionTag::Condition5 => "condition-5",
            ConditionTag::ConjectureLow => "conjecture-low",
            ConditionTag::ConjectureMid => "conjecture-mid",
            ConditionTag::ConjectureEven => "conjecture-even",
        };
        f.write_str(s)
    }
}

/// The checkers the crate knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Posa,
    Chvatal,
    RUniform,
    NonUniform,
    Conjecture,
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "posa" => Ok(Theorem::Posa),
            "chvatal" => Ok(Theorem::Chvatal),
            "r-uniform" => Ok(Theorem::RUniform),
            "non-uniform" => Ok(Theorem::NonUniform),
            "conjecture" => Ok(Theorem::Conjecture),
            other => Err(Error::precondition(format!("unknown theorem '{other}'"))),
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Posa => "posa",
            Theorem::Chvatal => "chvatal",
            Theorem::RUniform => "r-uniform",
            Theorem::NonUniform => "non-uniform",
            Theorem::Conjecture => "conjecture",
        })
    }
}

/// One violated inequality instance.
///
/// `index` is the `i` (or `k`) the instance is stated for. `checked_index`
/// is the sequence entry whose value failed the bound: the same as `index`
/// for plain inequalities, the consequent's index for implications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionViolation {
    pub condition: ConditionTag,
    pub index: usize,
    pub checked_index: usize,
    /// The value `d_{checked_index}` had to exceed (or reach, when `strict`
    /// is false).
    pub bound: BigUint,
    pub strict: bool,
    pub actual: u64,
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.strict { ">" } else { ">=" };
        write!(
            f,
            "{} at i={}: need d_{} {} {}, got {}",
            self.condition, self.index, self.checked_index, rel, self.bound, self.actual
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Setting {
    Graph,
    Uniform { r: usize },
    NonUniform,
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Setting::Graph => f.write_str("graph"),
            Setting::Uniform { r } => write!(f, "r={r}"),
            Setting::NonUniform => f.write_str("non-uniform"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub theorem: Theorem,
    pub n: usize,
    pub setting: Setting,
    pub satisfied: bool,
    /// Set when a precondition on `n` was overridden.
    pub forced: bool,
    pub violations: Vec<ConditionViolation>,
}

impl ConditionReport {
    fn new(theorem: Theorem, n: usize, setting: Setting) -> Self {
        ConditionReport {
            theorem,
            n,
            setting,
            satisfied: true,
            forced: false,
            violations: Vec::new(),
        }
    }

    fn push(
        &mut self,
        condition: ConditionTag,
        index: usize,
        checked_index: usize,
        bound: BigUint,
        strict: bool,
        actual: u64,
    ) {
        self.satisfied = false;
        self.violations.push(ConditionViolation {
            condition,
            index,
            checked_index,
            bound,
            strict,
            actual,
        });
    }

    /// Distinct violated tags, in order.
    pub fn violated_tags(&self) -> Vec<ConditionTag> {
        let mut tags: Vec<ConditionTag> = self.violations.iter().map(|v| v.condition).collect();
        tags.sort();
        tags.dedup();
        tags
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem={}", self.theorem)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "setting={}", self.setting)?;
        if self.forced {
            writeln!(f, "forced=true")?;
        }
        writeln!(f, "satisfied={}", self.satisfied)?;
        writeln!(f, "violations={}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn pow2(i: usize) -> BigUint {
    BigUint::from(1u8) << i
}

fn need_graph(d: &DegreeSequence) -> Result<usize> {
    let n = d.n();
    if n < 3 {
        return Err(Error::precondition(format!("need n >= 3, got n = {n}")));
    }
    Ok(n)
}

fn need_uniform(d: &DegreeSequence, r: usize) -> Result<usize> {
    let n = d.n();
    if r < 3 {
        return Err(Error::precondition(format!("need r >= 3, got r = {r}")));
    }
    if n <= 2 * r {
        return Err(Error::precondition(format!(
            "need n > 2r, got n = {n}, r = {r}"
        )));
    }
    Ok(n)
}

/// Pósa: `d_k > k` for every `1 <= k < n/2`.
pub fn posa_graph(d: &DegreeSequence) -> Result<ConditionReport> {
    let n = need_graph(d)?;
    let mut report = ConditionReport::new(Theorem::Posa, n, Setting::Graph);
    for k in (1..).take_while(|&k| 2 * k < n) {
        if d.d(k) <= k as u64 {
            report.push(ConditionTag::Posa, k, k, big(k as u64), true, d.d(k));
        }
    }
    Ok(report)
}

/// Chvátal: for every `1 <= k < n/2`, `d_k <= k` implies `d_{n-k} >= n-k`.
pub fn chvatal_graph(d: &DegreeSequence) -> Result<ConditionReport> {
    let n = need_graph(d)?;
    let mut report = ConditionReport::new(Theorem::Chvatal, n, Setting::Graph);
    for k in (1..).take_while(|&k| 2 * k < n) {
        if d.d(k) <= k as u64 && d.d(n - k) < (n - k) as u64 {
            report.push(
                ConditionTag::Chvatal,
                k,
                n - k,
                big((n - k) as u64),
                false,
                d.d(n - k),
            );
        }
    }
    Ok(report)
}

/// The `r`-uniform Pósa-type conditions (1)-(3).
///
/// For even `n` the index `(n-2)/2` is also the last index of condition (2).
/// Condition (3) is the strictly stronger bound there, so a deficiency at
/// that index is charged to (2) when it already fails (2), and to (3) only
/// when (2) holds.
pub fn posa_r_uniform(d: &DegreeSequence, r: usize) -> Result<ConditionReport> {
    let n = need_uniform(d, r)?;
    let mut report = ConditionReport::new(Theorem::RUniform, n, Setting::Uniform { r });
    for i in 1..r {
        if d.d(i) <= i as u64 {
            report.push(ConditionTag::Condition1, i, i, big(i as u64), true, d.d(i));
        }
    }
    let mut failed_two_at = None;
    for i in r..=(n - 1) / 2 {
        let bound = binomial(i as u64, r as u64 - 1);
        if big(d.d(i)) <= bound {
            report.push(ConditionTag::Condition2, i, i, bound, true, d.d(i));
            failed_two_at = Some(i);
        }
    }
    if n % 2 == 0 {
        let m = (n - 2) / 2;
        let bound = binomial(m as u64, r as u64 - 1) + 1u8;
        if big(d.d(m)) <= bound && failed_two_at != Some(m) {
            report.push(ConditionTag::Condition3, m, m, bound, true, d.d(m));
        }
    }
    Ok(report)
}

/// The non-uniform Pósa-type conditions (4)-(5). They are only claimed for
/// `n > 40`; `force` admits smaller `n` and marks the report.
pub fn posa_nonuniform(d: &DegreeSequence, force: bool) -> Result<ConditionReport> {
    let n = d.n();
    if n <= 40 && !force {
        return Err(Error::precondition(format!(
            "need n > 40, got n = {n} (use force to override)"
        )));
    }
    if n < 3 {
        return Err(Error::precondition(format!("need n >= 3, got n = {n}")));
    }
    let mut report = ConditionReport::new(Theorem::NonUniform, n, Setting::NonUniform);
    report.forced = n <= 40;
    let mut failed_four_at = None;
    for i in 1..=(n - 1) / 2 {
        let bound = pow2(i);
        if big(d.d(i)) <= bound {
            report.push(ConditionTag::Condition4, i, i, bound, true, d.d(i));
            failed_four_at = Some(i);
        }
    }
    if n.is_multiple_of(2) {
        let m = (n - 2) / 2;
        let bound = pow2(m) + 1u8;
        if m >= 1 && big(d.d(m)) <= bound && failed_four_at != Some(m) {
            report.push(ConditionTag::Condition5, m, m, bound, true, d.d(m));
        }
    }
    Ok(report)
}

/// The conjectured weakening of [`posa_r_uniform`] in Chvátal style.
pub fn conjecture_r_uniform(d: &DegreeSequence, r: usize) -> Result<ConditionReport> {
    let n = need_uniform(d, r)?;
    let r64 = r as u64;
    let mut report = ConditionReport::new(Theorem::Conjecture, n, Setting::Uniform { r });
    for i in 1..r {
        if d.d(i) <= i as u64 {
            report.push(
                ConditionTag::ConjectureLow,
                i,
                i,
                big(i as u64),
                true,
                d.d(i),
            );
        }
    }
    for i in r..=(n - 1) / 2 {
        if big(d.d(i)) <= binomial(i as u64, r64 - 1) {
            let bound = binomial((n - i - 1) as u64, r64 - 1);
            if big(d.d(n - i)) <= bound {
                report.push(
                    ConditionTag::ConjectureMid,
                    i,
                    n - i,
                    bound,
                    true,
                    d.d(n - i),
                );
            }
        }
    }
    if n % 2 == 0 {
        let m = (n - 2) / 2;
        let half = (n / 2) as u64;
        if big(d.d(m)) <= binomial(m as u64, r64 - 1) + 1u8 {
            let bound = binomial(half - 2, r64 - 1) + (half + 1) * binomial(half - 2, r64 - 2);
            let j = (n + 2) / 2;
            if big(d.d(j)) <= bound {
                report.push(ConditionTag::ConjectureEven, m, j, bound, true, d.d(j));
            }
        }
    }
    Ok(report)
}

/// Dispatch by theorem. `r` is required for the uniform checkers.
pub fn check(
    theorem: Theorem,
    d: &DegreeSequence,
    r: Option<usize>,
    force: bool,
) -> Result<ConditionReport> {
    let need_r = || r.ok_or_else(|| Error::precondition(format!("--r is required for {theorem}")));
    match theorem {
        Theorem::Posa => posa_graph(d),
        Theorem::Chvatal => chvatal_graph(d),
        Theorem::RUniform => posa_r_uniform(d, need_r()?),
        Theorem::NonUniform => posa_nonuniform(d, force),
        Theorem::Conjecture => conjecture_r_uniform(d, need_r()?),
    }
}
