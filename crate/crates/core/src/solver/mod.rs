//! Deciding Berge-Hamiltonicity: the exact search, the brute-force oracle,
//! the rotation engine and a rotation-driven heuristic.

mod bruteforce;
mod exact;
mod heuristic;
mod rotation;

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::path::BergeCycle;

pub use bruteforce::{
    hamiltonian_cycle_bruteforce, hamiltonian_path_bruteforce, hamiltonian_path_starts,
    is_hamiltonian_bruteforce, BRUTEFORCE_MAX_N,
};
pub use heuristic::extend_and_close;
pub use rotation::{
    rotate_defining, rotate_double, rotate_nondefining, rotation_closure,
    rotation_closure_with_limit, Move, RotationState, DEFAULT_CLOSURE_LIMIT,
};

/// Limits for a search. Node counts are deterministic; the wall-clock limit
/// is not, so reproducible runs should leave it unset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
    pub seed: u64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, time_limit: Option<Duration>, seed: u64) -> Result<Self> {
        if max_nodes == 0 {
            return Err(Error::precondition("node budget must be positive"));
        }
        if time_limit.is_some_and(|t| t.is_zero()) {
            return Err(Error::precondition("time limit must be positive"));
        }
        Ok(SearchBudget {
            max_nodes,
            time_limit,
            seed,
        })
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            ..Self::default()
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            time_limit: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Cycle(BergeCycle),
    /// The search tree was exhausted without finding a cycle.
    NoneExists,
    /// The budget ran out first.
    Unknown,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Cycle(_) => "cycle",
            Outcome::NoneExists => "none",
            Outcome::Unknown => "unknown",
        }
    }

    pub fn cycle(&self) -> Option<&BergeCycle> {
        match self {
            Outcome::Cycle(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: Outcome,
    /// Search nodes expanded.
    pub nodes: u64,
}

/// Exact decision: a verified cycle, a proof of absence (the whole search
/// tree explored), or `Unknown` when the budget ran out.
pub fn find_hamiltonian_berge_cycle(h: &Hypergraph, budget: &SearchBudget) -> Result<SearchReport> {
    if h.n() < 3 {
        return Err(Error::precondition(format!(
            "need n >= 3, got n = {}",
            h.n()
        )));
    }
    let report = exact::ExactSearch::run(h, budget);
    if let Outcome::Cycle(c) = &report.outcome {
        debug_assert_eq!(crate::path::verify_berge_cycle(h, c), Ok(()));
        debug_assert_eq!(c.len(), h.n());
    }
    Ok(report)
}
