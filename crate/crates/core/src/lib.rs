//! Exact, desk-scale toolkit for clique-free graph partitions.
//!
//! The central object is a *clique-bounded partition*: a split of the vertex
//! set of a graph `H` into classes `V_1, …, V_k` together with orders
//! `p_1 ≥ … ≥ p_k ≥ 2` such that each induced subgraph `H[V_i]` contains no
//! complete subgraph on `p_i` vertices. The library provides
//!
//! * constructive partitioners for graphs satisfying the degree/clique
//!   hypotheses under which such partitions are guaranteed to exist
//!   ([`partitioner`]),
//! * an exchange procedure that grows a maximum-size clique-free set and can
//!   replay its own trace for certification ([`exchange`]),
//! * exact brute-force oracles used both as fallbacks and as independent
//!   referees in tests ([`oracle`]),
//! * structured generators for the graph families the partitions are usually
//!   exercised on ([`generators`]), and
//! * small exact kernels for clique counting and maximum-clique-hitting
//!   independent sets ([`cliques`], [`hitting`]).
//!
//! Everything is deterministic: ties are broken toward the lowest vertex id,
//! randomized generators take explicit seeds, and no hash-ordered iteration
//! touches an algorithmic path.

pub mod cliques;
pub mod error;
pub mod exchange;
pub mod generators;
pub mod graph;
pub mod hitting;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod partitioner;
pub mod set;

pub use error::{Error, Result};
pub use graph::Graph;
pub use set::VertexSet;

/// Library version, recorded in run manifests emitted by the command-line
/// front end.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
