use num_rational::Rational64;
use pgf_core::freeprod::complex::{ConedGraph, FlatComplex};
use pgf_core::freeprod::{
    check_truncation_comparability, coned_distance, normal_form, scaled_distance, total_distance, tree_distance,
    ScaledPoint,
};
use pgf_core::{Factor, Presentation, Syllable, TreePoint, Word};
use proptest::prelude::*;

/// Raw syllable lists in `Z^2 * Z`, zero syllables and repeats included.
fn raw_word() -> impl Strategy<Value = Vec<Syllable>> {
    prop::collection::vec((any::<bool>(), -3i64..=3, -3i64..=3), 0..7).prop_map(|v| {
        v.into_iter()
            .map(|(a, x, y)| if a { Syllable::new(Factor::A, vec![x, y]) } else { Syllable::new(Factor::B, vec![x]) })
            .collect()
    })
}

fn word() -> impl Strategy<Value = Word> {
    raw_word().prop_map(normal_form)
}

/// Reduced form computed by a stack, independently of the library.
fn stack_reduce(raw: &[Syllable]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for s in raw {
        match out.last_mut() {
            Some(top) if top.factor == s.factor => {
                for (a, b) in top.exps.iter_mut().zip(&s.exps) {
                    *a += b;
                }
                if top.exps.iter().all(|&e| e == 0) {
                    out.pop();
                }
            }
            _ if s.exps.iter().all(|&e| e == 0) => {}
            _ => out.push(s.clone()),
        }
    }
    out
}

fn v(g: &Word) -> TreePoint {
    TreePoint::v(g.clone())
}

#[test]
fn parse_examples() {
    let p = Presentation::new(2, 1).unwrap();
    let w = p.parse("A(1,0)A(-1,0)B(2)").unwrap();
    assert_eq!(w, p.parse("B(2)").unwrap());
    assert!(p.parse("A(1)").is_err());
    assert!(p.parse("C(1)").is_err());
    assert!(p.parse("1").unwrap().is_identity());
}

#[test]
fn flat_complex_agrees_with_the_closed_form_in_rank_two() {
    let p = Presentation::new(2, 1).unwrap();
    let c = FlatComplex::build(&p, 2, 1).unwrap();
    for g in c.elements().iter().step_by(5) {
        let row = c.distances_from(g).unwrap();
        for (h, d) in c.elements().iter().zip(&row) {
            assert_eq!(d.unwrap(), total_distance(&v(g), &v(h)).unwrap(), "{g} -> {h}");
        }
    }
}

#[test]
fn coned_graph_is_the_tree_between_orbit_points() {
    let p = Presentation::cyclic();
    let c = ConedGraph::build(&p, 3, 2).unwrap();
    let e = Word::identity();
    let row = c.distances_from(&e).unwrap();
    for (h, d) in c.elements().iter().zip(&row) {
        assert_eq!(d.unwrap(), tree_distance(&TreePoint::v0(), &v(h)));
    }
}

#[test]
fn non_v_points_are_rejected() {
    let w = TreePoint::w(Factor::A, &Word::identity());
    assert!(total_distance(&w, &TreePoint::v0()).is_err());
    assert!(check_truncation_comparability(&TreePoint::v0(), &TreePoint::v0(), Rational64::from_integer(0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normal_form_matches_stack_reduction(raw in raw_word()) {
        let w = normal_form(raw.clone());
        let expected = stack_reduce(&raw);
        prop_assert_eq!(w.syllables(), expected.as_slice());
        prop_assert_eq!(normal_form(w.syllables().to_vec()), w);
    }

    #[test]
    fn group_laws(a in word(), b in word(), c in word()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.left_divide(&b), a.inverse().mul(&b));
    }

    #[test]
    fn total_distance_is_a_left_invariant_metric(a in word(), b in word(), c in word(), g in word()) {
        let d = |x: &Word, y: &Word| total_distance(&v(x), &v(y)).unwrap();
        prop_assert_eq!(d(&a, &a), Rational64::from_integer(0));
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&g.mul(&a), &g.mul(&b)), d(&a, &b));
        prop_assert!(a == b || d(&a, &b) > Rational64::from_integer(0));
    }

    #[test]
    fn coned_distance_is_the_tree_distance(a in word(), b in word()) {
        let dt = tree_distance(&v(&a), &v(&b));
        prop_assert_eq!(dt, Rational64::from_integer(coned_distance(&a, &b) as i64));
    }

    #[test]
    fn truncated_sums_are_comparable(a in word(), b in word(), kappa in 1i64..=6) {
        prop_assert!(check_truncation_comparability(&v(&a), &v(&b), Rational64::from_integer(kappa)).unwrap());
    }

    #[test]
    fn scaled_tree_is_the_tree_stretched(a in word(), b in word(), half in 1u64..=4) {
        let d = 2 * half;
        let (x, y) = (ScaledPoint::from_tree_point(&v(&a), d).unwrap(), ScaledPoint::from_tree_point(&v(&b), d).unwrap());
        let dt = tree_distance(&v(&a), &v(&b)) * Rational64::from_integer(d as i64);
        prop_assert_eq!(Rational64::from_integer(scaled_distance(&x, &y, d) as i64), dt);
    }
}
