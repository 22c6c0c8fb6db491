use pgf_core::farey::{curve_geodesic, random_mapping_class, random_slope, twist, Slope, SurfaceModel};
use pgf_core::projection::{
    annular_distance, annular_project, bgim_diameter, l1_distance, lift_arc_distance, lipschitz_check,
    twist_coefficient_check, AnnularDomain, DisjointDomains, ProjectionError,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(p: i64, q: i64) -> Slope {
    Slope::int(p, q)
}

fn slope(bound: i64) -> impl Strategy<Value = Slope> {
    (-bound..=bound, -bound..=bound)
        .prop_filter("primitive", |(p, q)| (*p, *q) != (0, 0) && num_integer::gcd(*p, *q) == 1)
        .prop_map(|(p, q)| Slope::int(p, q))
}

#[test]
fn projection_to_the_core_is_empty() {
    let y = AnnularDomain::new(s(2, 3));
    assert!(annular_project(&y, &s(2, 3)).is_none());
    assert!(annular_project(&y, &s(1, 1)).is_some());
    assert!(matches!(annular_distance(&y, &s(2, 3), &s(1, 1)), Err(ProjectionError::EmptyProjection { .. })));
}

#[test]
fn coefficient_examples() {
    let y = AnnularDomain::new(s(1, 0));
    assert_eq!(annular_distance(&y, &s(0, 1), &s(0, 1)).unwrap(), 0);
    assert_eq!(annular_distance(&y, &s(0, 1), &s(20, 1)).unwrap(), 21);
    assert_eq!(twist_coefficient_check(&y, &s(0, 1), 0).unwrap(), 0);
}

#[test]
fn single_component_l1_is_the_coefficient() {
    let y = AnnularDomain::new(s(1, 2));
    let z = DisjointDomains::new(vec![y.clone()]).unwrap();
    assert_eq!(l1_distance(&z, &s(0, 1), &s(7, 3)).unwrap(), annular_distance(&y, &s(0, 1), &s(7, 3)).unwrap());
    assert!(DisjointDomains::new(vec![y, AnnularDomain::new(s(1, 3))]).is_err());
}

#[test]
fn stars_have_small_projections() {
    // the Farey neighbours of 0/1 other than the core 1/0 pairwise meet once
    let y = AnnularDomain::new(s(1, 0));
    let star: Vec<Slope> = [s(0, 1), s(1, 1), s(-1, 1)].into();
    assert!(lipschitz_check(&star, &y).unwrap() <= 3);
}

#[test]
fn bounded_geodesic_image_on_sampled_geodesics() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = SurfaceModel::TORUS;
    let mut worst = 0;
    for _ in 0..300 {
        let (a, b, c) = (random_slope(&mut rng, 30), random_slope(&mut rng, 30), random_slope(&mut rng, 8));
        if a == b {
            continue;
        }
        let path = curve_geodesic(&a, &b, &t);
        match bgim_diameter(&path, &AnnularDomain::new(c.clone()), &t).unwrap() {
            Some(d) => worst = worst.max(d),
            None => assert!(path.contains(&c)),
        }
    }
    assert!(worst <= 10, "diameter {worst}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn fast_coefficient_within_one_of_lift_arcs(c in slope(50), a in slope(50), b in slope(50)) {
        prop_assume!(c != a && c != b);
        let y = AnnularDomain::new(c);
        let fast = annular_distance(&y, &a, &b).unwrap() as i64;
        let slow = lift_arc_distance(&y, &a, &b).unwrap() as i64;
        prop_assert!((fast - slow).abs() <= 1, "fast {} slow {}", fast, slow);
    }

    #[test]
    fn twisting_moves_the_coefficient_by_about_n(c in slope(30), b in slope(30), n in -50i64..=50) {
        prop_assume!(c != b);
        let y = AnnularDomain::new(c.clone());
        let d = annular_distance(&y, &b, &twist(&c, n).apply(&b)).unwrap() as i64;
        prop_assert!((d - n.abs()).abs() <= 5);
    }

    #[test]
    fn coefficients_are_equivariant(c in slope(20), a in slope(20), b in slope(20), seed in 0u64..1000) {
        prop_assume!(c != a && c != b);
        let g = random_mapping_class(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let y = AnnularDomain::new(c);
        let (ga, gb, gy) = (g.apply(&a), g.apply(&b), y.translate(&g));
        // arc offsets are fixed per chart, so the brute force only moves within its ±1 band
        let (slow, slow_moved) = (lift_arc_distance(&y, &a, &b).unwrap(), lift_arc_distance(&gy, &ga, &gb).unwrap());
        prop_assert!(slow.abs_diff(slow_moved) <= 2);
        prop_assert_eq!(annular_distance(&gy, &ga, &gb).unwrap(), annular_distance(&y, &a, &b).unwrap());
    }

    #[test]
    fn coefficient_is_a_metric(c in slope(20), a in slope(20), b in slope(20), x in slope(20)) {
        prop_assume!(c != a && c != b && c != x);
        let y = AnnularDomain::new(c);
        let d = |u: &Slope, v: &Slope| annular_distance(&y, u, v).unwrap();
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &b) <= d(&a, &x) + d(&x, &b));
    }
}
