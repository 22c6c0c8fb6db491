//! Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.
//! Exits nonzero if any criterion fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use pgf_core::farey::{geometric_intersection, random_slope, Slope};
use pgf_core::freeprod::complex::FlatComplex;
use pgf_core::freeprod::{check_truncation_comparability, total_distance};
use pgf_core::lab::{
    bgim_sample, d0_probe, estimator_comparability, free_group_criterion, injectivity_scan,
    off_orbit_projection_check, orbit_distortion_check, pa_scan, pell_slope, random_word, DistortionOptions,
    EstimatorOptions, OffOrbitOptions, RealizedGroup, Report,
};
use pgf_core::metric::{check_comparable, check_truncated_sum, truncate};
use pgf_core::projection::{annular_distance, lift_arc_distance, twist_coefficient_check, AnnularDomain};
use pgf_core::{Bound, MarkingGraphConfig, Presentation, SurfaceModel, TreePoint, Word};

const T: SurfaceModel = SurfaceModel::TORUS;

type Outcome = Result<(bool, String), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn summary(r: &Report, key: &str) -> Result<f64, String> {
    r.get(key)
        .ok_or_else(|| format!("{} has no {key}", r.id))?
        .parse()
        .map_err(|e| format!("{} {key}: {e}", r.id))
}

/// Fast annular coefficient within ±1 of the brute-force lift-arc count.
fn lift_arc_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut n, mut worst) = (0, 0u64);
    while n < 1200 {
        let (c, a, b) = (random_slope(&mut rng, 50), random_slope(&mut rng, 50), random_slope(&mut rng, 50));
        if c == a || c == b {
            continue;
        }
        let y = AnnularDomain::new(c);
        let fast = annular_distance(&y, &a, &b).map_err(err)?;
        let slow = lift_arc_distance(&y, &a, &b).map_err(err)?;
        worst = worst.max(fast.abs_diff(slow));
        n += 1;
    }
    Ok((worst <= 1, format!("{n} triples, entries <= 50, max gap {worst}")))
}

/// `|d_Y(b, t^n b) - |n|| <= 5`.
fn twist_band() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let (mut n_done, mut worst) = (0, 0i64);
    while n_done < 500 {
        let (c, b) = (random_slope(&mut rng, 50), random_slope(&mut rng, 50));
        if c == b {
            continue;
        }
        let n = rng.gen_range(-50i64..=50);
        let d = twist_coefficient_check(&AnnularDomain::new(c), &b, n).map_err(err)? as i64;
        worst = worst.max((d - n.abs()).abs());
        n_done += 1;
    }
    Ok((worst <= 5, format!("{n_done} samples, |n| <= 50, max deviation {worst}")))
}

/// Truncated-sum comparison of finite sequences, and truncation of the
/// exact free-product distance.
fn truncation_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let (k, c, kappa) = (3.0, 2.0, 13.0);
    let bound = Bound::new(k, c).map_err(err)?;
    let mut seq_violations = 0;
    let mut oracle_mismatch = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=12);
        let mut xs = Vec::with_capacity(len);
        let mut ys = Vec::with_capacity(len);
        while xs.len() < len {
            let y: f64 = rng.gen_range(0.0..60.0);
            let lo = ((y - c) / k).max(0.0);
            let x: f64 = rng.gen_range(lo..=k * (y + c));
            if check_comparable(&x, &y, &bound).map_err(err)? {
                xs.push(x);
                ys.push(y);
            }
        }
        let got = check_truncated_sum(&xs, &ys, &bound, &kappa).map_err(err)?;
        let lhs: f64 = xs.iter().map(|&x| if x >= kappa { x } else { 0.0 }).sum();
        let rhs: f64 = ys.iter().map(|&y| if y >= c { y } else { 0.0 }).sum();
        oracle_mismatch += usize::from(got != (lhs <= 2.0 * k * rhs));
        seq_violations += usize::from(!got);
    }
    let p = Presentation::new(2, 1).map_err(err)?;
    let mut tree_violations = 0;
    for i in 0..1000 {
        let g = random_word(&mut rng, &p, 6, 4);
        let h = if i % 5 == 0 { Word::identity() } else { random_word(&mut rng, &p, 6, 4) };
        let kappa = Rational64::new(rng.gen_range(1..=16), 2);
        let ok = check_truncation_comparability(&TreePoint::v(g), &TreePoint::v(h), kappa).map_err(err)?;
        tree_violations += usize::from(!ok);
    }
    // truncation itself: idempotent and monotone on a grid
    for a in 0..40 {
        let t = truncate(a as f64, 13.0).map_err(err)?;
        if truncate(t, 13.0).map_err(err)? != t || (a > 0 && t < truncate((a - 1) as f64, 13.0).map_err(err)?) {
            tree_violations += 1;
        }
    }
    Ok((
        seq_violations + oracle_mismatch + tree_violations == 0,
        format!(
            "sequences: 1000 runs (K=3, C=2, kappa=13), {seq_violations} violations, {oracle_mismatch} oracle mismatches; \
             free product: 1000 pairs, {tree_violations} violations"
        ),
    ))
}

/// Closed-form free-product distance against BFS on the explicit complex.
fn flat_complex_exactness() -> Outcome {
    let mut notes = Vec::new();
    let mut mismatches = 0usize;

    // rank (1,1): every pair
    let p = Presentation::cyclic();
    let c = FlatComplex::build(&p, 4, 3).map_err(err)?;
    let els = c.elements().to_vec();
    let bad: usize = els
        .par_iter()
        .map(|g| compare_row(&c, g, &els).unwrap_or(usize::MAX / 4))
        .sum();
    mismatches += bad;
    notes.push(format!("ranks (1,1): all {} pairs", els.len() * els.len()));

    // rank (2,1): sources are the identity, every one-syllable word and a
    // seeded sample of longer words, each against every target
    let p = Presentation::new(2, 1).map_err(err)?;
    let c = FlatComplex::build(&p, 4, 3).map_err(err)?;
    let els = c.elements().to_vec();
    let mut sources: Vec<Word> = els.iter().filter(|w| w.syllable_count() <= 1).cloned().collect();
    let short = sources.len();
    let long: Vec<&Word> = els.iter().filter(|w| w.syllable_count() > 1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..SAMPLED_SOURCES {
        sources.push(long[rng.gen_range(0..long.len())].clone());
    }
    let bad: usize = sources
        .par_iter()
        .map(|g| compare_row(&c, g, &els).unwrap_or(usize::MAX / 4))
        .sum();
    mismatches += bad;
    notes.push(format!(
        "ranks (2,1): {} sources ({short} with <= 1 syllable, {SAMPLED_SOURCES} sampled) x {} targets",
        sources.len(),
        els.len()
    ));
    notes.push(format!("{mismatches} mismatches"));
    Ok((mismatches == 0, notes.join("; ")))
}

const SAMPLED_SOURCES: usize = 200;

fn compare_row(c: &FlatComplex, g: &Word, els: &[Word]) -> Result<usize, String> {
    let row = c.distances_from(g).map_err(err)?;
    let gv = TreePoint::v(g.clone());
    let mut bad = 0;
    for (h, d) in els.iter().zip(row) {
        let exact = total_distance(&gv, &TreePoint::v(h.clone())).map_err(err)?;
        if d != Some(exact) {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Injectivity and hyperbolicity of the realized group at distance 6.
fn realized_group_at_six() -> Outcome {
    let rg = RealizedGroup::pell(T, 6).map_err(err)?;
    if rg.d() != 6 {
        return Ok((false, format!("pair at distance {} instead of 6", rg.d())));
    }
    let inj = injectivity_scan(&rg, 5, 4).map_err(err)?;
    let pa = pa_scan(&rg, 5, 4, 200, 105).map_err(err)?;
    let ok = inj.passed() && pa.passed();
    Ok((
        ok,
        format!(
            "{} words, {} kernel hits; {} cyclically long words, {} with |trace| <= 2",
            inj.get("words_checked").unwrap_or("?"),
            inj.get("kernel_hits").unwrap_or("?"),
            pa.get("words_checked").unwrap_or("?"),
            pa.get("violations").unwrap_or("?"),
        ),
    ))
}

/// The free-group probe over distances 1..=6.
fn free_group_probe() -> Outcome {
    let family = || -> Result<Vec<RealizedGroup>, String> {
        (1..=6).map(|d| RealizedGroup::new(T, Slope::infinity(), pell_slope(d), 1, 1).map_err(err)).collect()
    };
    let fam = family()?;
    let first = d0_probe(&fam, 5, 2, 106).map_err(err)?;
    let second = d0_probe(&family()?, 5, 2, 106).map_err(err)?;
    let reproducible =
        first.to_csv() == second.to_csv() && first.summary_text() == second.summary_text();
    let mut consistent = first.passed();
    let mut checked = 0;
    for rg in &fam {
        if geometric_intersection(rg.alpha(), rg.beta(), rg.surface()) >= BigInt::from(2) {
            // the free-group criterion is the independent oracle here
            let inj = injectivity_scan(rg, 5, 2).map_err(err)?;
            consistent &= inj.passed() && free_group_criterion(rg);
            checked += 1;
        }
    }
    let minimal = first.get("minimal_passing_D").unwrap_or("none").to_string();
    Ok((
        reproducible && consistent && minimal != "none",
        format!("minimal passing D = {minimal}, {checked} pairs with i >= 2 consistent: {consistent}, byte-reproducible: {reproducible}"),
    ))
}

/// Marking distance against the distance-formula estimate over a ball.
fn marking_estimator() -> Outcome {
    let cfg = MarkingGraphConfig::standard(T);
    let opts = EstimatorOptions::default();
    let r = estimator_comparability(&cfg, &opts, None).map_err(err)?;
    let k = summary(&r, "K")?;
    let k_half = summary(&r, "K_half_sample")?;
    let bound = Bound::new(k, opts.budget).map_err(err)?;
    let mut incomparable = 0;
    for row in &r.rows {
        let d: f64 = row[2].parse().map_err(err)?;
        let e: f64 = row[3].parse().map_err(err)?;
        incomparable += usize::from(!check_comparable(&d, &e, &bound).map_err(err)?);
    }
    let stable = (k - k_half).abs() <= 0.2 * k;
    let ok = opts.radius >= 4 && r.rows.len() >= 200 && k <= 20.0 && stable && incomparable == 0;
    Ok((
        ok,
        format!(
            "radius {}, {} pairs, K = {k:.3} (half sample {k_half:.3}), C = {}, {incomparable} incomparable",
            opts.radius,
            r.rows.len(),
            opts.budget
        ),
    ))
}

/// Lower-bound slope of the orbit map into the marking graph.
fn orbit_distortion() -> Outcome {
    let rg = RealizedGroup::pell(T, 2).map_err(err)?;
    let cfg = MarkingGraphConfig::standard(T);
    let r = orbit_distortion_check(&rg, &cfg, &DistortionOptions::default()).map_err(err)?;
    let (s1, s2) = (summary(&r, "slope_sample_1")?, summary(&r, "slope_sample_2")?);
    let ok = s1 > 0.0 && s2 > 0.0 && (s1 - s2).abs() <= 0.2 * s1;
    Ok((ok, format!("words <= 4 syllables, slopes 1/K = {s1:.4} and {s2:.4} on disjoint samples")))
}

/// Off-orbit annular coefficients stay bounded; on-orbit ones grow.
fn off_orbit_projections() -> Outcome {
    let rg = RealizedGroup::pell(T, 6).map_err(err)?;
    let r = off_orbit_projection_check(&rg, &OffOrbitOptions::default()).map_err(err)?;
    let (m1, m1_half) = (summary(&r, "bound_M1")?, summary(&r, "bound_M1_half_sample")?);
    let contrast = r.get("contrast_ok") == Some("true");
    Ok((
        m1 == m1_half && contrast && r.passed(),
        format!("M1 = {m1} (half sample {m1_half}), on-orbit growth >= |n| - 5: {contrast}"),
    ))
}

/// Bounded geodesic image diameters in a Farey ball.
fn bounded_geodesic_image() -> Outcome {
    let radius = 6;
    let d = bgim_sample(radius, 1000, 110, &T).map_err(err)?;
    let m = *d.iter().max().ok_or("no samples")?;
    let m_half = *d[..500].iter().max().ok_or("no samples")?;
    Ok((m == m_half, format!("{} geodesics in a ball of radius {radius}, M = {m} (first 500: {m_half})", d.len())))
}

fn main() {
    rayon::ThreadPoolBuilder::new().build_global().ok();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("annular coefficient vs lift arcs", lift_arc_agreement),
        ("twist band", twist_band),
        ("truncated sums", truncation_suites),
        ("free-product distance exactness", flat_complex_exactness),
        ("realized group at distance 6", realized_group_at_six),
        ("free-group probe", free_group_probe),
        ("marking distance estimator", marking_estimator),
        ("orbit distortion", orbit_distortion),
        ("off-orbit projections", off_orbit_projections),
        ("bounded geodesic image", bounded_geodesic_image),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        failed += usize::from(!ok);
        println!("{} {:>2} {name}: {detail} ({secs:.1}s)", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
