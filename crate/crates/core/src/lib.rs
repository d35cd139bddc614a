//! Exact top-k non-overlapping sequential pattern mining with gap and
//! length constraints.
//!
//! The crate provides four layers:
//!
//! - [`model`]: sequences, databases, patterns, constraint windows, and
//!   the occurrence predicates.
//! - [`nettree`]: the leveled-DAG support engine that counts the maximum
//!   non-overlapping occurrences of a pattern per sequence.
//! - [`miner`]: pattern-growth candidate generation, the exact top-k loop
//!   with dynamic minimum support and QMSP pruning, a beam-style baseline,
//!   and the precision measure comparing the two.
//! - [`oracle`]: brute-force references used to validate everything else
//!   at desk scale.

pub mod miner;
pub mod model;
pub mod nettree;
pub mod oracle;

pub use miner::{
    canonical_order, generate_candidates, heuristic_mine, precision, rank_canonical, tnosp_mine,
    FrequentArray, MinerError, MiningMetrics, MiningParams, MiningReport, TopKHeap,
};
pub use model::{
    is_occurrence, non_overlapping, GapConstraint, Item, LengthConstraint, ModelError, Occurrence,
    Pattern, Sequence, SequenceDatabase,
};
pub use nettree::{build_nettree, db_support, netgap_support, DbSupport, Nettree, SupportResult};
pub use oracle::{
    enumerate_occurrences, exhaustive_topk, max_nonoverlapping, oracle_db_support, oracle_support,
    OracleError, OracleLimits,
};
