use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;

use super::{twist, FareyError, MappingClass, Slope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    OncePuncturedTorus,
    FourPuncturedSphere,
}

/// A complexity-one surface. Its curve graph is the Farey graph in both
/// cases; only the intersection numbers differ by the multiplier `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    kind: SurfaceKind,
}

impl SurfaceModel {
    pub const TORUS: SurfaceModel = SurfaceModel {
        kind: SurfaceKind::OncePuncturedTorus,
    };
    pub const SPHERE: SurfaceModel = SurfaceModel {
        kind: SurfaceKind::FourPuncturedSphere,
    };

    pub fn new(kind: SurfaceKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    /// Minimal intersection of distinct curves: 1 on the torus, 2 on the sphere.
    pub fn intersection_multiplier(&self) -> u32 {
        match self.kind {
            SurfaceKind::OncePuncturedTorus => 1,
            SurfaceKind::FourPuncturedSphere => 2,
        }
    }

    /// `3g + p - 3`, which is 1 for both models.
    pub fn complexity(&self) -> u32 {
        match self.kind {
            SurfaceKind::OncePuncturedTorus => 3 + 1 - 3,
            SurfaceKind::FourPuncturedSphere => 4 - 3,
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.kind {
            SurfaceKind::OncePuncturedTorus => "torus",
            SurfaceKind::FourPuncturedSphere => "sphere",
        })
    }
}

impl FromStr for SurfaceModel {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, FareyError> {
        match s.trim() {
            "torus" | "S11" | "once-punctured-torus" => Ok(Self::TORUS),
            "sphere" | "S04" | "four-punctured-sphere" => Ok(Self::SPHERE),
            other => Err(FareyError::Parse(format!("unknown surface {other:?}"))),
        }
    }
}

/// `i(a, b) = m·|p_a q_b - q_a p_b|`.
pub fn geometric_intersection(a: &Slope, b: &Slope, s: &SurfaceModel) -> BigInt {
    a.det(b).abs() * BigInt::from(s.intersection_multiplier())
}

/// Two curves fill a complexity-one surface exactly when they are distinct.
pub fn fills(a: &Slope, b: &Slope) -> bool {
    a != b
}

/// Uniform-ish primitive slope with `|p|, |q| <= bound` (rejection sampling).
pub fn random_slope<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Slope {
    loop {
        let p = rng.gen_range(-bound..=bound);
        let q = rng.gen_range(-bound..=bound);
        if (p, q) != (0, 0) && num_integer::gcd(p, q) == 1 {
            return Slope::int(p, q);
        }
    }
}

/// Product of `len` random twists about `0/1` and `1/0` with exponents in
/// `±1..=±2`, occasionally composed with the orientation reversal `(x,y) ↦ (y,x)`.
pub fn random_mapping_class<R: Rng + ?Sized>(rng: &mut R, len: usize) -> MappingClass {
    let mut g = MappingClass::identity();
    for _ in 0..len {
        let core = if rng.gen_bool(0.5) {
            Slope::zero()
        } else {
            Slope::infinity()
        };
        let mut n = rng.gen_range(1..=2);
        if rng.gen_bool(0.5) {
            n = -n;
        }
        g = &g * &twist(&core, n);
    }
    if rng.gen_bool(0.25) {
        let swap = MappingClass::new(0, 1, 1, 0).expect("unimodular");
        g = &g * &swap;
    }
    g
}
