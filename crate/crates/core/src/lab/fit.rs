use super::LabError;
use crate::metric::ComparabilityBound;

/// How a fitted `(K, C)` is chosen among the admissible ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitPolicy {
    /// Smallest `K`, then smallest `C`. Always yields `K = 1`.
    Lexicographic,
    /// Additive constant fixed at the budget, smallest `K` for it.
    AdditiveBudget(f64),
}

/// Smallest constants making every `(source, target)` pair comparable.
/// Fails on fewer than two pairs, and when no finite `K` fits the budget
/// (a positive source against a zero target with zero budget).
pub fn qi_fit(pairs: &[(f64, f64)], policy: FitPolicy) -> Result<ComparabilityBound<f64>, LabError> {
    if pairs.len() < 2 {
        return Err(LabError::TooFewPairs(pairs.len()));
    }
    let (k, c) = match policy {
        FitPolicy::Lexicographic => {
            let c = pairs.iter().map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            (1.0, c)
        }
        FitPolicy::AdditiveBudget(c) => {
            let mut k: f64 = 1.0;
            for &(x, y) in pairs {
                // x / K - c <= y
                if x > 0.0 && x / k - c > y {
                    if y + c <= 0.0 {
                        return Err(LabError::NoFiniteFit(format!("pair ({x}, {y}) with budget {c}")));
                    }
                    k = k.max(x / (y + c));
                }
                // y <= K x + c
                if y > k * x + c {
                    if x <= 0.0 {
                        return Err(LabError::NoFiniteFit(format!("pair ({x}, {y}) with budget {c}")));
                    }
                    k = k.max((y - c) / x);
                }
            }
            (k, c)
        }
    };
    ComparabilityBound::new(k, c).map_err(LabError::from)
}

/// `|a - b| <= tolerance · a`.
pub fn within_relative(a: f64, b: f64, tolerance: f64) -> bool {
    (a - b).abs() <= tolerance * a.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::check_comparable;

    #[test]
    fn identity_map() {
        let pairs: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, i as f64)).collect();
        let b = qi_fit(&pairs, FitPolicy::Lexicographic).unwrap();
        assert_eq!((*b.k(), *b.c()), (1.0, 0.0));
        let b = qi_fit(&pairs, FitPolicy::AdditiveBudget(0.0)).unwrap();
        assert_eq!((*b.k(), *b.c()), (1.0, 0.0));
    }

    #[test]
    fn budgeted_fit_is_tight() {
        let pairs = [(10.0, 30.0), (10.0, 4.0), (3.0, 3.0)];
        let b = qi_fit(&pairs, FitPolicy::AdditiveBudget(2.0)).unwrap();
        assert_eq!(*b.k(), 2.8);
        for (x, y) in pairs {
            assert!(check_comparable(&x, &y, &b).unwrap());
        }
        let tighter = ComparabilityBound::new(2.7, 2.0).unwrap();
        assert!(!pairs.iter().all(|(x, y)| tighter.holds(x, y)));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(qi_fit(&[(1.0, 1.0)], FitPolicy::Lexicographic), Err(LabError::TooFewPairs(1))));
        assert!(qi_fit(&[(5.0, 0.0), (1.0, 1.0)], FitPolicy::AdditiveBudget(0.0)).is_err());
        assert!(within_relative(10.0, 11.9, 0.2));
        assert!(!within_relative(10.0, 12.1, 0.2));
    }
}
