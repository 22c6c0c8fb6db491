use pgf_core::metric::{
    check_comparable, check_projection_monotone, check_truncated_sum, estimate_delta, hausdorff_quasigeodesic,
    is_local_quasigeodesic, truncate, ComparabilityBound, FiniteGraph, MetricError,
};
use pgf_core::{Bound, ExactBound, Rational};
use proptest::prelude::*;

fn cycle(n: usize) -> FiniteGraph {
    FiniteGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Thin-triangle constant of the `n`-cycle from modular arithmetic alone.
/// Each side is the arc from the lower endpoint, taking the shorter way
/// round and, for antipodal pairs, the way whose first step is the smaller
/// vertex.
fn cycle_delta(n: usize) -> u64 {
    let d = |x: usize, y: usize| -> u64 {
        let k = x.abs_diff(y);
        k.min(n - k) as u64
    };
    let arc = |a: usize, b: usize| -> Vec<usize> {
        let (a, b) = (a.min(b), a.max(b));
        let fwd = b - a;
        let back = n - fwd;
        let forward = fwd < back || (fwd == back && (a + 1) % n < (a + n - 1) % n);
        let len = fwd.min(back);
        (0..=len).map(|i| if forward { (a + i) % n } else { (a + n - i) % n }).collect()
    };
    let mut worst = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let sides = [arc(a, b), arc(b, c), arc(a, c)];
                for i in 0..3 {
                    for &x in &sides[i] {
                        let gap = sides
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .flat_map(|(_, s)| s.iter().map(|&y| d(x, y)))
                            .min()
                            .unwrap();
                        worst = worst.max(gap);
                    }
                }
            }
        }
    }
    worst
}

#[test]
fn delta_of_cycles_matches_modular_oracle() {
    assert_eq!(cycle_delta(6), 1);
    for n in 3..=12 {
        assert_eq!(estimate_delta(&cycle(n)).unwrap(), cycle_delta(n), "cycle of length {n}");
    }
}

#[test]
fn delta_of_random_trees_is_zero() {
    // parent of i is any earlier vertex: every such graph is a tree
    for seed in 0..20u64 {
        let n = 12 + (seed as usize % 7);
        let edges = (1..n).map(|i| (((seed as usize) * 7919 + i * 31) % i, i));
        let g = FiniteGraph::from_edges(n, edges).unwrap();
        assert_eq!(estimate_delta(&g).unwrap(), 0);
    }
}

#[test]
fn delta_rejects_disconnected_graphs() {
    let g = FiniteGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(estimate_delta(&g).is_err());
}

#[test]
fn graph_construction_errors() {
    assert!(matches!(FiniteGraph::from_edges(3, [(0, 0)]), Err(MetricError::SelfLoop(0))));
    assert!(matches!(FiniteGraph::from_edges(3, [(0, 1), (1, 0)]), Err(MetricError::DuplicateEdge(..))));
    assert!(FiniteGraph::from_edges(3, [(0, 3)]).is_err());
}

#[test]
fn comparability_examples() {
    let b = |k, c| Bound::new(k, c).unwrap();
    assert!(check_comparable(&10.0, &10.0, &b(1.0, 0.0)).unwrap());
    assert!(!check_comparable(&10.0, &0.0, &b(1.0, 0.0)).unwrap());
    assert!(check_comparable(&4.0, &10.0, &b(2.0, 2.0)).unwrap());
    assert!(Bound::new(0.5, 0.0).is_err());
    assert!(Bound::new(1.0, -1.0).is_err());
    assert_eq!(truncate(5.0, 3.0).unwrap(), 5.0);
    assert_eq!(truncate(2.0, 3.0).unwrap(), 0.0);
    assert_eq!(truncate(3.0, 3.0).unwrap(), 3.0);
    assert!(truncate(-1.0, 3.0).is_err());
}

#[test]
fn exact_scalars_agree_with_floats() {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let exact = ExactBound::new(r(3, 2), r(1, 3)).unwrap();
    let float = Bound::new(1.5, 1.0 / 3.0).unwrap();
    for (a, b) in [(2, 1), (7, 3), (1, 9), (10, 16)] {
        let (x, y) = (r(a, 1), r(b, 1));
        let e = check_comparable(&x, &y, &exact).unwrap();
        let f = check_comparable(&(a as f64), &(b as f64), &float).unwrap();
        assert_eq!(e, f, "({a}, {b})");
    }
    // B <= 3/2 A + 1/3 and D <= 2B + 1 give D <= 3A + 5/3
    let then = ExactBound::new(r(2, 1), r(1, 1)).unwrap();
    let c = exact.compose(&then);
    assert_eq!(c.k(), &r(3, 1));
    assert_eq!(c.c(), &r(5, 3));
    for a in 0..20 {
        let a = r(a, 1);
        let b = r(3, 2) * &a + r(1, 3);
        let d = r(2, 1) * &b + r(1, 1);
        assert!(check_comparable(&a, &d, &c).unwrap());
    }
}

#[test]
fn truncated_sum_examples_and_errors() {
    let b = |k, c| Bound::new(k, c).unwrap();
    assert!(check_truncated_sum(&[5.0, 7.0], &[5.0, 7.0], &b(1.0, 0.0), &1.0).unwrap());
    assert!(check_truncated_sum(&[10.0], &[5.0], &b(2.0, 0.0), &1.0).unwrap());
    assert!(matches!(
        check_truncated_sum(&[1.0], &[1.0, 2.0], &b(1.0, 0.0), &1.0),
        Err(MetricError::LengthMismatch(1, 2))
    ));
    assert!(matches!(
        check_truncated_sum(&[1.0], &[1.0], &b(2.0, 3.0), &12.0),
        Err(MetricError::KappaTooSmall { .. })
    ));
    assert!(matches!(
        check_truncated_sum(&[100.0], &[1.0], &b(2.0, 1.0), &5.0),
        Err(MetricError::NotComparable { .. })
    ));
}

#[test]
fn quasigeodesic_checkers_on_a_grid() {
    // 4x4 grid, vertex (r, c) = 4r + c
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            let v = 4 * r + c;
            if c < 3 {
                edges.push((v, v + 1));
            }
            if r < 3 {
                edges.push((v, v + 4));
            }
        }
    }
    let g = FiniteGraph::from_edges(16, edges).unwrap();
    let geodesic = [0usize, 1, 2, 3, 7, 11, 15];
    assert!(is_local_quasigeodesic(&geodesic, &10.0, &1.0, &0.0, &g).unwrap());
    assert_eq!(hausdorff_quasigeodesic(&geodesic, &g).unwrap(), 0);
    // the opposite boundary path: corner 12 is 3 from the chosen geodesic
    let other = [0usize, 4, 8, 12, 13, 14, 15];
    assert_eq!(hausdorff_quasigeodesic(&other, &g).unwrap(), 3);
    let detour = [0usize, 1, 5, 1, 2, 3];
    assert_eq!(hausdorff_quasigeodesic(&detour, &g).unwrap(), 1);
    let backtrack = [0usize, 1, 0];
    assert!(!is_local_quasigeodesic(&backtrack, &2.0, &1.0, &0.0, &g).unwrap());
    assert!(is_local_quasigeodesic(&[0usize, 1, 2, 3], &3.0, &1.0, &0.0, &g).unwrap());
    assert!(check_projection_monotone(&[0usize, 1, 2, 3], &1.0, &0.0, &0.0, &g).unwrap());
    assert!(matches!(
        check_projection_monotone(&backtrack, &1.0, &0.0, &0.0, &g),
        Err(MetricError::Precondition(_))
    ));
    assert!(matches!(is_local_quasigeodesic(&[0usize, 5], &1.0, &1.0, &0.0, &g), Err(MetricError::NotAWalk(0))));
}

fn comparable_pair(k: f64, c: f64) -> impl Strategy<Value = (f64, f64)> {
    (0.0..200.0f64, 0.0..1.0f64).prop_map(move |(x, t)| {
        let lo = (x / k - c).max(0.0);
        let hi = k * x + c;
        (x, lo + t * (hi - lo))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn truncated_sums_are_comparable(pairs in prop::collection::vec(comparable_pair(3.0, 2.0), 1..30)) {
        let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let b = Bound::new(3.0, 2.0).unwrap();
        prop_assert!(check_truncated_sum(&xs, &ys, &b, &13.0).unwrap());
    }

    #[test]
    fn symmetrized_bound_reverses_comparability(x in 0.0..100.0f64, y in 0.0..100.0f64, k in 1.0..5.0f64, c in 0.0..5.0f64) {
        let b = ComparabilityBound::new(k, c).unwrap();
        if check_comparable(&x, &y, &b).unwrap() {
            prop_assert!(check_comparable(&y, &x, &b.symmetrize()).unwrap());
        }
    }

    #[test]
    fn truncation_is_idempotent_and_monotone(a in 0.0..50.0f64, d in 0.0..10.0f64, b in 0.0..50.0f64) {
        let t = truncate(a, b).unwrap();
        prop_assert_eq!(truncate(t, b).unwrap(), t);
        prop_assert!(truncate(a + d, b).unwrap() >= t);
    }
}
