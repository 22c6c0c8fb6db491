use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Ordered field-like scalar used by the coarse-geometry arithmetic.
///
/// Implemented for `f32`, `f64` and the exact rationals
/// ([`crate::Rational`], `Ratio<i64>`), so comparability checks can run in
/// exact arithmetic whenever both sides come from integer data.
pub trait Scalar:
    Num + Signed + PartialOrd + Clone + Debug + Display + FromPrimitive + Send + Sync
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar represents small integers")
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl<T> Scalar for T where
    T: Num + Signed + PartialOrd + Clone + Debug + Display + FromPrimitive + Send + Sync
{
}
