//! Curves and mapping classes on complexity-one surfaces.

mod distance;
mod matrix;
mod slope;
mod surface;

pub use distance::{
    curve_distance, curve_distance_oracle, curve_geodesic, curve_geodesic_oracle, farey_ball,
    farey_box, farey_neighbors, is_geodesic, ladder, ladder_vertices, log_distance_bound,
    CurveGraph, Ladder,
};
pub use matrix::{intersection_growth, is_pseudo_anosov, twist, MappingClass};
pub use slope::Slope;
pub use surface::{
    fills, geometric_intersection, random_mapping_class, random_slope, SurfaceKind, SurfaceModel,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero vector is not a slope")]
    ZeroVector,
    #[error("determinant {0} is not ±1")]
    NotUnimodular(String),
    #[error("seed {seed} returns to itself after {power} iterations")]
    DegenerateSeed { seed: String, power: u32 },
    #[error("need at least 3 iterations, got {0}")]
    TooFewIterations(u32),
}
