use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FareyError, Slope};
use crate::Rational;

/// Integer 2×2 matrix with determinant ±1 acting projectively on slopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    m: [[BigInt; 2]; 2],
}

impl MappingClass {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, FareyError> {
        let mc = Self {
            m: [[a.into(), b.into()], [c.into(), d.into()]],
        };
        let det = mc.det();
        if det.abs() != BigInt::one() {
            return Err(FareyError::NotUnimodular(det.to_string()));
        }
        Ok(mc)
    }

    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::raw(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn trace(&self) -> BigInt {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Projectively trivial: `±I`.
    pub fn is_central(&self) -> bool {
        self.m[0][1].is_zero()
            && self.m[1][0].is_zero()
            && self.m[0][0] == self.m[1][1]
            && self.m[0][0].abs().is_one()
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        let [[a, b], [c, d]] = &self.m;
        Self::raw(d * &det, -(b * &det), -(c * &det), a * &det)
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &MappingClass) -> Self {
        &(g * self) * &g.inverse()
    }

    pub fn apply_vector(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (
            &self.m[0][0] * x + &self.m[0][1] * y,
            &self.m[1][0] * x + &self.m[1][1] * y,
        )
    }

    pub fn apply(&self, s: &Slope) -> Slope {
        let (x, y) = self.apply_vector(s.p(), s.q());
        Slope::from_vector(x, y)
    }
}

impl Mul for &MappingClass {
    type Output = MappingClass;

    fn mul(self, rhs: &MappingClass) -> MappingClass {
        let (a, b) = (&self.m, &rhs.m);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        MappingClass::raw(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl Mul for MappingClass {
    type Output = MappingClass;

    fn mul(self, rhs: MappingClass) -> MappingClass {
        &self * &rhs
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl FromStr for MappingClass {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, FareyError> {
        let bad = || FareyError::Parse(format!("expected [[a,b],[c,d]], got {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(bad)?;
        let (row0, row1) = inner.split_once("],[").ok_or_else(bad)?;
        let mut nums = Vec::with_capacity(4);
        for row in [row0, row1] {
            let (x, y) = row.split_once(',').ok_or_else(bad)?;
            for t in [x, y] {
                nums.push(t.parse::<BigInt>().map_err(|_| bad())?);
            }
        }
        let mut it = nums.into_iter();
        let mut next = || it.next().expect("four entries");
        MappingClass::new(next(), next(), next(), next())
    }
}

/// `n`-th power of the Dehn twist about `v`, as the transvection
/// `w ↦ w + n·det(w, v)·v` with `det(w, v) = w_x v_y - w_y v_x`.
///
/// Positive `n` is the left-handed twist in this convention:
/// `twist(1/0, 1)` sends `0/1` to `-1/1`.
pub fn twist(v: &Slope, n: i64) -> MappingClass {
    let n = BigInt::from(n);
    let (x, y) = (v.p(), v.q());
    let nxy = &n * x * y;
    MappingClass::raw(
        BigInt::one() + &nxy,
        -(&n * x * x),
        &n * y * y,
        BigInt::one() - nxy,
    )
}

/// `|trace| > 2`: the hyperbolic (pseudo-Anosov) classes.
pub fn is_pseudo_anosov(mc: &MappingClass) -> bool {
    mc.trace().abs() > BigInt::from(2)
}

/// Ratio `i(mc^{k+1}·s, s) / i(mc^k·s, s)` at `k = iters - 1`; for
/// hyperbolic classes this tends to the spectral radius, for twists to 1.
pub fn intersection_growth(mc: &MappingClass, seed: &Slope, iters: u32) -> Result<f64, FareyError> {
    if iters < 3 {
        return Err(FareyError::TooFewIterations(iters));
    }
    let mut cur = seed.clone();
    let mut last = BigInt::zero();
    let mut prev = BigInt::zero();
    for k in 1..=iters {
        cur = mc.apply(&cur);
        let i = cur.det(seed).abs();
        if i.is_zero() {
            return Err(FareyError::DegenerateSeed {
                seed: seed.to_string(),
                power: k,
            });
        }
        prev = std::mem::replace(&mut last, i);
    }
    Rational::new(last, prev)
        .to_f64()
        .ok_or_else(|| FareyError::Parse("ratio overflow".into()))
}
