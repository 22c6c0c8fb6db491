//! Realization of `Z * Z` as a subgroup generated by two twists on a
//! complexity-one surface, the equivariant maps into the curve graph and
//! the marking graph, and the experiments run on top of them.
//!
//! Every experiment returns a [`Report`]: CSV rows plus a sorted summary
//! carrying a `verdict`. Empirical constants go through a
//! [`ConstantsLedger`](crate::metric::ConstantsLedger) so later experiments
//! reuse them rather than re-estimating.

mod constants;
mod estimator;
mod fit;
mod lemmas;
mod projections;
mod realize;
mod report;
mod scans;

pub use constants::{
    bgim_sample, estimate_constants, estimate_curve_delta, phi_tree_path, ConstantsOptions,
};
pub use estimator::{estimator_comparability, orbit_distortion_check, DistortionOptions, EstimatorOptions};
pub use fit::{qi_fit, within_relative, FitPolicy};
pub use lemmas::{
    local_qg_check, orbit_filling_check, thin_translation_check, translation_lower_bound_check,
    translation_monotonicity, twist_word_length_check,
};
pub use projections::{
    edge_constant_harness, flat_projection_check, off_orbit_projection_check, orbit_curves, OffOrbitOptions,
};
pub use realize::{pell_slope, random_word, RealizedGroup};
pub use report::{verdict, Report, Verdict};
pub use scans::{d0_probe, free_group_criterion, injectivity_scan, pa_scan};

use thiserror::Error;

use crate::freeprod::FreeProdError;
use crate::markings::MarkingError;
use crate::metric::MetricError;
use crate::projection::ProjectionError;

#[derive(Debug, Error, Clone)]
pub enum LabError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("surface realization supports rank-one factors only, got rank {0}")]
    UnsupportedRank(usize),
    #[error("need at least two pairs to fit, got {0}")]
    TooFewPairs(usize),
    #[error("no finite multiplicative constant: {0}")]
    NoFiniteFit(String),
    #[error("ledger is missing {0}")]
    MissingConstant(String),
    #[error("marking distance exceeded the radius cap for {0}")]
    RadiusCap(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Marking(#[from] MarkingError),
    #[error(transparent)]
    FreeProd(#[from] FreeProdError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

pub(crate) fn ledger_f64(ledger: &crate::metric::ConstantsLedger, name: &str) -> Result<f64, LabError> {
    ledger
        .value(name)
        .map(|v| v.to_f64())
        .ok_or_else(|| LabError::MissingConstant(name.to_string()))
}
