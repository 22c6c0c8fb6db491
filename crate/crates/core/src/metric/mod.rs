//! Coarse-geometry arithmetic and finite-graph utilities.

mod comparability;
mod graph;
mod hyperbolic;
mod ledger;
mod quasigeodesic;

pub use comparability::{check_comparable, check_truncated_sum, truncate, ComparabilityBound};
pub use graph::{FiniteGraph, GraphMetric};
pub use hyperbolic::estimate_delta;
pub use ledger::{ConstantsLedger, LedgerEntry, LedgerValue, Provenance};
pub use quasigeodesic::{check_projection_monotone, hausdorff_quasigeodesic, is_local_quasigeodesic};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("negative input {0}")]
    Negative(String),
    #[error("invalid comparability constants K={k}, C={c}")]
    InvalidBound { k: String, c: String },
    #[error("sequence lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("kappa {kappa} must exceed 2KC = {two_kc}")]
    KappaTooSmall { kappa: String, two_kc: String },
    #[error("pair {index} is not comparable: {x} vs {y}")]
    NotComparable { index: usize, x: String, y: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("path is not a walk: step {0} joins non-adjacent vertices")]
    NotAWalk(usize),
    #[error("empty path")]
    EmptyPath,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ledger parse error on line {line}: {msg}")]
    LedgerParse { line: usize, msg: String },
}
