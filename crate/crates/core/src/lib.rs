//! Pósa-type degree conditions for Hamiltonian Berge cycles in hypergraphs:
//! checkers for the graph and hypergraph conditions, the extremal families
//! showing the uniform conditions are sharp, an exact search with
//! certificates, the path-rotation engine, and campaign runners.
//!
//! Vertices are `0..n` with `n <= 63`; edges are vertex bitsets kept in a
//! canonical order and named by their index in it.

pub mod bitset;
pub mod cli;
pub mod combinatorics;
pub mod conditions;
pub mod constructions;
pub mod error;
pub mod harness;
pub mod hypergraph;
pub mod io;
pub mod path;
pub mod solver;

pub use bitset::{BitSet, PositionSet, VertexSet, MAX_VERTICES};
pub use conditions::{check, ConditionReport, ConditionTag, Theorem};
pub use constructions::{generate, ConstructionSpec, Family};
pub use error::{Error, Result};
pub use hypergraph::{DegreeSequence, Hypergraph};
pub use path::{verify_berge_cycle, verify_berge_path, BergeCycle, BergePath};
pub use solver::{find_hamiltonian_berge_cycle, Outcome, SearchBudget};
