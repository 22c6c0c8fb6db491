use std::fmt;

use super::MetricError;
use crate::Scalar;

/// Multiplicative/additive constants `(K, C)` with `K >= 1`, `C >= 0`.
///
/// `A` and `B` are comparable under `(K, C)` when `A/K - C <= B <= K*A + C`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparabilityBound<T> {
    k: T,
    c: T,
}

impl<T: Scalar> ComparabilityBound<T> {
    pub fn new(k: T, c: T) -> Result<Self, MetricError> {
        if k < T::one() || c < T::zero() {
            return Err(MetricError::InvalidBound {
                k: k.to_string(),
                c: c.to_string(),
            });
        }
        Ok(Self { k, c })
    }

    pub fn identity() -> Self {
        Self {
            k: T::one(),
            c: T::zero(),
        }
    }

    pub fn k(&self) -> &T {
        &self.k
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    /// Constants for the reversed relation: `A ≍(K,C) B` gives `B ≍(K,KC) A`.
    pub fn symmetrize(&self) -> Self {
        Self {
            k: self.k.clone(),
            c: self.k.clone() * self.c.clone(),
        }
    }

    /// Chains `A ≍(K,C) B` with `B ≍(K',C') D` into `A ≍(KK', C' + K'C) D`.
    ///
    /// The additive term is `C' + K'C`; `C' + C/K'` is too small in general
    /// (take A=10, (K,C)=(1,5), B=15, (K',C')=(2,0), D=30).
    pub fn compose(&self, then: &Self) -> Self {
        Self {
            k: self.k.clone() * then.k.clone(),
            c: then.c.clone() + then.k.clone() * self.c.clone(),
        }
    }

    /// `A/K - C <= B <= K*A + C`, without domain checks.
    pub fn holds(&self, a: &T, b: &T) -> bool {
        let lower = a.clone() / self.k.clone() - self.c.clone();
        let upper = self.k.clone() * a.clone() + self.c.clone();
        lower <= *b && *b <= upper
    }
}

impl<T: fmt::Display> fmt::Display for ComparabilityBound<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, C={})", self.k, self.c)
    }
}

fn non_negative<T: Scalar>(x: &T) -> Result<(), MetricError> {
    if *x < T::zero() {
        Err(MetricError::Negative(x.to_string()))
    } else {
        Ok(())
    }
}

/// `[A]_B`: `A` when `A >= B`, otherwise `0`.
pub fn truncate<T: Scalar>(a: T, b: T) -> Result<T, MetricError> {
    non_negative(&a)?;
    non_negative(&b)?;
    Ok(if a >= b { a } else { T::zero() })
}

pub fn check_comparable<T: Scalar>(
    a: &T,
    b: &T,
    bound: &ComparabilityBound<T>,
) -> Result<bool, MetricError> {
    non_negative(a)?;
    non_negative(b)?;
    Ok(bound.holds(a, b))
}

/// Truncated-sum inequality for termwise comparable sequences:
/// with `x_i ≍(K,C) y_i` and `kappa > 2KC`,
/// `Σ [x_i]_kappa <= 2K · Σ [y_i]_C`.
///
/// Violated hypotheses are reported as errors, never as `false`.
pub fn check_truncated_sum<T: Scalar>(
    xs: &[T],
    ys: &[T],
    bound: &ComparabilityBound<T>,
    kappa: &T,
) -> Result<bool, MetricError> {
    if xs.len() != ys.len() {
        return Err(MetricError::LengthMismatch(xs.len(), ys.len()));
    }
    let two = T::from_int(2);
    let two_kc = two.clone() * bound.k.clone() * bound.c.clone();
    if *kappa <= two_kc {
        return Err(MetricError::KappaTooSmall {
            kappa: kappa.to_string(),
            two_kc: two_kc.to_string(),
        });
    }
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
        if !check_comparable(x, y, bound)? {
            return Err(MetricError::NotComparable {
                index: i,
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        lhs = lhs + truncate(x.clone(), kappa.clone())?;
        rhs = rhs + truncate(y.clone(), bound.c.clone())?;
    }
    Ok(lhs <= two * bound.k.clone() * rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn b(k: f64, c: f64) -> ComparabilityBound<f64> {
        ComparabilityBound::new(k, c).unwrap()
    }

    #[test]
    fn truncation_cases() {
        assert_eq!(truncate(5.0, 3.0).unwrap(), 5.0);
        assert_eq!(truncate(2.0, 3.0).unwrap(), 0.0);
        assert_eq!(truncate(3.0, 3.0).unwrap(), 3.0);
        assert!(truncate(-1.0, 3.0).is_err());
        assert!(truncate(1.0, -3.0).is_err());
    }

    #[test]
    fn comparable_cases() {
        assert!(check_comparable(&10.0, &10.0, &b(1.0, 0.0)).unwrap());
        assert!(!check_comparable(&10.0, &0.0, &b(1.0, 0.0)).unwrap());
        assert!(check_comparable(&4.0, &10.0, &b(2.0, 2.0)).unwrap());
        assert!(check_comparable(&-4.0, &10.0, &b(2.0, 2.0)).is_err());
    }

    #[test]
    fn rejects_bad_constants() {
        assert!(ComparabilityBound::new(0.5, 0.0).is_err());
        assert!(ComparabilityBound::new(1.0, -0.1).is_err());
    }

    #[test]
    fn truncated_sum_examples() {
        assert!(check_truncated_sum(&[5.0, 7.0], &[5.0, 7.0], &b(1.0, 0.0), &1.0).unwrap());
        assert!(check_truncated_sum(&[10.0], &[5.0], &b(2.0, 0.0), &1.0).unwrap());
    }

    #[test]
    fn truncated_sum_reports_hypotheses() {
        assert_eq!(
            check_truncated_sum(&[1.0], &[1.0, 2.0], &b(1.0, 0.0), &1.0),
            Err(MetricError::LengthMismatch(1, 2))
        );
        assert!(matches!(
            check_truncated_sum(&[1.0], &[1.0], &b(3.0, 2.0), &12.0),
            Err(MetricError::KappaTooSmall { .. })
        ));
        assert!(matches!(
            check_truncated_sum(&[100.0], &[1.0], &b(3.0, 2.0), &13.0),
            Err(MetricError::NotComparable { index: 0, .. })
        ));
    }

    #[test]
    fn compose_counterexample_to_divided_constant() {
        let first = b(1.0, 5.0);
        let second = b(2.0, 0.0);
        assert!(first.holds(&10.0, &15.0));
        assert!(second.holds(&15.0, &30.0));
        let composed = first.compose(&second);
        assert!(composed.holds(&10.0, &30.0));
        let divided = b(2.0, 0.0 + 5.0 / 2.0);
        assert!(!divided.holds(&10.0, &30.0));
    }

    #[test]
    fn exact_rationals() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let bound = ComparabilityBound::new(r(3, 2), r(1, 3)).unwrap();
        assert!(check_comparable(&r(2, 1), &r(3, 1), &bound).unwrap());
        assert!(check_comparable(&r(2, 1), &r(10, 3), &bound).unwrap());
        assert!(!check_comparable(&r(2, 1), &r(7, 2), &bound).unwrap());
        let small = ComparabilityBound::new(Ratio::new(2i64, 1), Ratio::new(1, 2)).unwrap();
        assert_eq!(small.symmetrize().c(), &Ratio::new(1, 1));
    }

    #[test]
    fn single_precision() {
        let bound = ComparabilityBound::<f32>::new(2.0, 2.0).unwrap();
        assert!(check_comparable(&4.0f32, &10.0, &bound).unwrap());
    }

    proptest! {
        #[test]
        fn truncate_idempotent_and_monotone(a in 0u32..1000, a2 in 0u32..1000, bb in 0u32..1000) {
            let (a, a2, bb) = (a as f64, a2 as f64, bb as f64);
            let t = truncate(a, bb).unwrap();
            prop_assert_eq!(truncate(t, bb).unwrap(), t);
            let (lo, hi) = if a <= a2 { (a, a2) } else { (a2, a) };
            prop_assert!(truncate(lo, bb).unwrap() <= truncate(hi, bb).unwrap());
        }

        #[test]
        fn symmetrize_reverses(a in 0i64..500, bv in 0i64..500, k in 1i64..6, c in 0i64..20) {
            let r = |n: i64| Ratio::new(n, 1);
            let bound = ComparabilityBound::new(r(k), r(c)).unwrap();
            if check_comparable(&r(a), &r(bv), &bound).unwrap() {
                prop_assert!(check_comparable(&r(bv), &r(a), &bound.symmetrize()).unwrap());
            }
        }

        #[test]
        fn compose_is_sound(
            a in 0i64..300, k1 in 1i64..5, c1 in 0i64..10, k2 in 1i64..5, c2 in 0i64..10,
            t1 in 0u32..=1000, t2 in 0u32..=1000,
        ) {
            let r = |n: i64| Ratio::new(n, 1);
            let first = ComparabilityBound::new(r(k1), r(c1)).unwrap();
            let second = ComparabilityBound::new(r(k2), r(c2)).unwrap();
            // B and D anywhere inside their admissible windows.
            let lerp = |lo: Ratio<i64>, hi: Ratio<i64>, t: u32| {
                let lo = if lo < r(0) { r(0) } else { lo };
                lo + (hi - lo) * Ratio::new(t as i64, 1000)
            };
            let av = r(a);
            let bv = lerp(av / r(k1) - r(c1), r(k1) * av + r(c1), t1);
            let dv = lerp(bv / r(k2) - r(c2), r(k2) * bv + r(c2), t2);
            prop_assert!(first.holds(&av, &bv));
            prop_assert!(second.holds(&bv, &dv));
            prop_assert!(first.compose(&second).holds(&av, &dv));
        }

        #[test]
        fn truncated_sum_never_fails(
            pairs in prop::collection::vec((0u32..200, 0u32..=1000), 1..30),
        ) {
            let (k, c, kappa) = (3.0, 2.0, 13.0);
            let bound = b(k, c);
            let xs: Vec<f64> = pairs.iter().map(|p| p.0 as f64).collect();
            let ys: Vec<f64> = pairs
                .iter()
                .map(|&(x, t)| {
                    // integer points of the admissible window, so no rounding at the ends
                    let x = x as f64;
                    let lo = (x / k - c).max(0.0).ceil();
                    let hi = (k * x + c).floor();
                    lo + (t as f64 % (hi - lo + 1.0))
                })
                .collect();
            prop_assert!(check_truncated_sum(&xs, &ys, &bound, &kappa).unwrap());
        }
    }
}
