//! Free products of free abelian groups `H_A * H_B`: normal forms, the
//! Bass–Serre tree, and the flat-expanded and coned-off distances.

pub mod complex;
mod tree;
mod word;

pub use tree::{
    build_scaled_tree, build_tree, check_truncation_comparability, coned_distance, distance_terms,
    flat_term, scaled_distance, total_distance, tree_distance, w_vertices_between, LabeledGraph,
    PointKind, ScaledPoint, TreePoint, MAX_BALL_VERTICES,
};
pub use word::{enumerate_words, nonzero_vectors, normal_form, Factor, Presentation, Syllable, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeProdError {
    #[error("factor ranks must be positive")]
    ZeroRank,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("factor {factor} has rank {expected}, got {got} exponents")]
    RankMismatch { factor: Factor, expected: usize, got: usize },
    #[error("{0} is not an edge midpoint")]
    NotAVPoint(String),
    #[error("{0} is not a coset vertex")]
    NotAWVertex(String),
    #[error("kappa must be positive, got {0}")]
    NonPositiveKappa(String),
    #[error("radius, scale and exponent bound must be positive")]
    BadBound,
    #[error("explicit ball would exceed {0} vertices")]
    ResourceCap(usize),
    #[error("graph construction failed: {0}")]
    Graph(String),
    #[error("{0} is outside the explicit complex")]
    OutsideComplex(String),
}
