//! Brute-force annular coefficients from explicit lift arcs.
//!
//! The core is straightened to the horizontal direction of the flat square
//! torus by a conjugator built from Euclid's algorithm (a different one from
//! [`AnnularDomain::conjugator`]). A curve of normalized slope `P/Q` then
//! crosses the annulus around the core in `Q` straight arcs; in the strip
//! `[0,1] × R` of the annular cover an arc starting at height 0 and
//! horizontal position `x0` ends at height 1 at `x0 + P/Q`. Two arcs cross
//! once for every integer strictly between their horizontal offsets at the
//! bottom and at the top. The coefficient is the largest crossing count over
//! all pairs of arcs, plus one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AnnularDomain, ProjectionError};
use crate::farey::{MappingClass, Slope};
use crate::Rational;

/// Cap on arcs per curve; the count only depends on the offsets modulo 1,
/// which the first arcs already sample finely enough.
const MAX_ARCS: u64 = 64;

/// Product of elementary matrices reducing the core to `1/0`, followed by a
/// horizontal shift.
fn euclid_conjugator(core: &Slope) -> MappingClass {
    let mut g = MappingClass::identity();
    let (mut x, mut y) = (core.p().clone(), core.q().clone());
    while !y.is_zero() {
        // (x, y) -> (y, x - k y), then swap back with a sign to stay in SL2
        let k = x.div_floor(&y);
        let step = MappingClass::new(0, 1, -1, k.clone()).expect("unimodular");
        // step·(x, y) = (y, -x + k y)
        let (nx, ny) = (y.clone(), -&x + &k * &y);
        x = nx;
        y = ny;
        g = &step * &g;
    }
    if x.is_negative() {
        g = &MappingClass::new(-1, 0, 0, -1).expect("unimodular") * &g;
    }
    let shift = MappingClass::new(1, 3, 0, 1).expect("unimodular");
    &shift * &g
}

fn normalized(g: &MappingClass, a: &Slope) -> Option<(BigInt, BigInt)> {
    let img = g.apply(a);
    (!img.q().is_zero()).then(|| (img.p().clone(), img.q().clone()))
}

/// Bottom positions in `[0, 1)` of the arcs, found by following the curve
/// around the torus: each return to the core's level advances by `P/Q`.
fn arc_positions(start: &Rational, p: &BigInt, q: &BigInt) -> Vec<Rational> {
    let step = Rational::new(p.clone(), q.clone());
    let count = q.to_u64().unwrap_or(u64::MAX).min(MAX_ARCS);
    let mut x = start.clone();
    let mut out = Vec::with_capacity(count as usize);
    for _ in 0..count {
        out.push(x.clone());
        x = (x + &step).fract();
        if x.is_negative() {
            x += Rational::one();
        }
    }
    out
}

pub fn lift_arc_distance(y: &AnnularDomain, a: &Slope, b: &Slope) -> Result<u64, ProjectionError> {
    let g = euclid_conjugator(y.core());
    let empty = |side| ProjectionError::EmptyProjection {
        domain: y.to_string(),
        side,
    };
    let (pa, qa) = normalized(&g, a).ok_or_else(|| empty(0))?;
    let (pb, qb) = normalized(&g, b).ok_or_else(|| empty(1))?;
    if a == b {
        return Ok(0);
    }
    // offsets with odd numerators over 4·Qa·Qb keep every endpoint
    // difference off the integers
    let denom = BigInt::from(4) * &qa * &qb;
    let arcs_a = arc_positions(&Rational::new(BigInt::one(), denom.clone()), &pa, &qa);
    let arcs_b = arc_positions(&Rational::new(BigInt::from(2), denom), &pb, &qb);
    let shift = Rational::new(pa, qa) - Rational::new(pb, qb);
    let mut best = BigInt::zero();
    for xa in &arcs_a {
        for xb in &arcs_b {
            let d0 = xa - xb;
            let d1 = &d0 + &shift;
            let crossings = (d1.floor() - d0.floor()).to_integer().abs();
            best = best.max(crossings);
        }
    }
    Ok(best.to_u64().unwrap_or(u64::MAX - 1) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::annular_distance;

    #[test]
    fn euclid_conjugator_normalizes() {
        for (p, q) in [(1, 0), (0, 1), (2, 3), (-5, 7), (13, 8), (-1, 1)] {
            let g = euclid_conjugator(&Slope::int(p, q));
            assert_eq!(g.apply(&Slope::int(p, q)), Slope::infinity());
            assert_eq!(g.det(), BigInt::from(1));
        }
    }

    #[test]
    fn square_torus_example() {
        let y = AnnularDomain::new(Slope::infinity());
        assert_eq!(lift_arc_distance(&y, &Slope::zero(), &Slope::int(1, 1)).unwrap(), 2);
        assert_eq!(lift_arc_distance(&y, &Slope::zero(), &Slope::zero()).unwrap(), 0);
        assert!(lift_arc_distance(&y, &Slope::infinity(), &Slope::zero()).is_err());
    }

    #[test]
    fn agrees_with_fast_path_on_a_grid() {
        let y = AnnularDomain::new(Slope::int(2, 5));
        for p in -6..=6 {
            for q in 1..=6 {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let a = Slope::int(p, q);
                let b = Slope::int(q, -p + 1);
                if &a == y.core() || &b == y.core() {
                    continue;
                }
                let fast = annular_distance(&y, &a, &b).unwrap() as i64;
                let slow = lift_arc_distance(&y, &a, &b).unwrap() as i64;
                assert!((fast - slow).abs() <= 1, "{a} {b}: {fast} vs {slow}");
            }
        }
    }
}
