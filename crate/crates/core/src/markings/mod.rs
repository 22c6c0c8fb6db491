//! The marking graph: vertices are filling slope sets with bounded pairwise
//! intersection, edges join markings whose union is still a marking for a
//! larger bound. Distances are explored by BFS at desk scale and compared
//! with the annular distance-formula estimate.

mod cache;
mod formula;
mod graph;
mod marking;

pub use cache::{ball_cache_key, load_ball, store_ball, BALL_CACHE_VERSION};
pub use formula::{
    distance_formula_estimate, distance_formula_oracle, k_of, min_threshold, Domain, FormulaEstimate,
};
pub use graph::{marking_distance, marking_distance_unpruned, MarkingBall, MarkingGraphConfig, MAX_BALL_MARKINGS};
pub use marking::{is_marking, marking_projection_diameter, slopes_within, Marking};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkingError {
    #[error("{0} is not a marking")]
    NotAMarking(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no slope of {0} crosses the core")]
    EmptyProjection(String),
    #[error("threshold {a2} must exceed {min}")]
    ThresholdTooSmall { a2: String, min: String },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("exploration exceeded {0} markings")]
    ResourceCap(usize),
    #[error("cache error: {0}")]
    Cache(String),
}
