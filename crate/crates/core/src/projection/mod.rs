//! Annular subsurface projections and coefficients.

mod annular;
pub mod lift_arcs;

pub use annular::{
    algebraic_intersection, annular_distance, annular_project, bgim_diameter, class_distance,
    l1_distance, lipschitz_check, projection_diameter, twist_coefficient_check, AnnularDomain,
    DisjointDomains, ProjectionClass,
};
pub use lift_arcs::lift_arc_distance;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("argument {side} has empty projection to {domain}")]
    EmptyProjection { domain: String, side: usize },
    #[error("empty projection to component {component} ({domain})")]
    EmptyComponent { component: usize, domain: String },
    #[error("domains {0} and {1} are not disjoint")]
    NotDisjoint(String, String),
    #[error("path is not a geodesic")]
    NotGeodesic,
    #[error("no curves given")]
    EmptyInput,
}
