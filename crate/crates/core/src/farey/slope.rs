use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FareyError;

/// Primitive integer vector up to sign: an essential simple closed curve on
/// a complexity-one surface.
///
/// Canonical form has `gcd(|p|, |q|) = 1` and either `q > 0` or
/// `(p, q) = (1, 0)`. Ordering is lexicographic on `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: BigInt,
    q: BigInt,
}

impl Slope {
    /// Normalizes any nonzero vector; the gcd is divided out.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, FareyError> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(FareyError::ZeroVector);
        }
        let g = p.gcd(&q);
        p /= &g;
        q /= &g;
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(Self { p, q })
    }

    pub(crate) fn from_vector(p: BigInt, q: BigInt) -> Self {
        Self::new(p, q).expect("unimodular images of slopes are nonzero")
    }

    pub fn int(p: i64, q: i64) -> Self {
        Self::new(p, q).expect("nonzero slope")
    }

    pub fn infinity() -> Self {
        Self::int(1, 0)
    }

    pub fn zero() -> Self {
        Self::int(0, 1)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `p_a q_b - q_a p_b`, defined up to sign on slopes; the sign here is
    /// the one of the canonical representatives.
    pub fn det(&self, other: &Slope) -> BigInt {
        &self.p * &other.q - &self.q * &other.p
    }

    /// Sup norm `max(|p|, |q|)`.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.abs())
    }

    /// `(x, y)` with `det((x, y), self) = 1`, i.e. `x q - y p = 1`.
    pub(crate) fn complement(&self) -> (BigInt, BigInt) {
        let ext = self.q.extended_gcd(&self.p);
        // ext.x * q + ext.y * p = gcd = 1 up to sign
        let sign = if ext.gcd.is_one() { BigInt::one() } else { -BigInt::one() };
        (ext.x * &sign, -(ext.y * sign))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, FareyError> {
        let bad = || FareyError::Parse(format!("expected p/q, got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}
