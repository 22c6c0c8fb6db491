//! Exact computations in the curve complex and mapping class group of
//! complexity-one surfaces (the once-punctured torus and the four-punctured
//! sphere), together with the free-product machinery needed to study
//! subgroups generated by two cyclic twist groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`metric`]: coarse arithmetic (comparability, truncation), finite
//!   graphs, thin-triangle hyperbolicity and quasigeodesic checkers.
//! - [`farey`]: slopes, integer mapping classes and Farey-graph distances.
//! - [`projection`]: annular subsurface projections and their coefficients.
//! - [`markings`]: the bounded-intersection marking graph and the
//!   distance-formula estimator.
//! - [`freeprod`]: normal forms in `Z^n * Z^m`, the Bass–Serre tree and the
//!   exact distance on the flat-and-edge complex.
//! - [`lab`]: the surface realization of the free product and the
//!   experiment harnesses built on everything above.
//!
//! Coarse-geometry arithmetic is generic over the scalar type (see
//! [`Scalar`]); the aliases below fix the common instantiations.

pub mod farey;
pub mod freeprod;
pub mod lab;
pub mod markings;
pub mod metric;
pub mod projection;
mod scalar;

pub use scalar::Scalar;

/// Arbitrary-precision rational used wherever a quantity is derived from
/// integer data.
pub type Rational = num_rational::BigRational;

/// Half-integer lengths in the Bass–Serre tree.
pub type TreeLength = num_rational::Rational64;

/// Comparability constants over `f64`.
pub type Bound = metric::ComparabilityBound<f64>;

/// Comparability constants over `f32`.
pub type Bound32 = metric::ComparabilityBound<f32>;

/// Exact comparability constants.
pub type ExactBound = metric::ComparabilityBound<Rational>;

pub use farey::{MappingClass, Slope, SurfaceKind, SurfaceModel};
pub use freeprod::{Factor, Presentation, Syllable, TreePoint, Word};
pub use markings::{Marking, MarkingGraphConfig};
pub use metric::{ComparabilityBound, ConstantsLedger, FiniteGraph};
pub use projection::{AnnularDomain, ProjectionClass};
