use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{verdict, Report, Verdict};
use super::{LabError, RealizedGroup};
use crate::farey::{intersection_growth, is_pseudo_anosov, Slope};
use crate::freeprod::{enumerate_words, Word};

/// Every nontrivial word within bounds realizes to a non-identity matrix.
/// Rows list the kernel hits; `central_hits` counts words realized as `-I`.
pub fn injectivity_scan(rg: &RealizedGroup, max_syllables: usize, max_exp: i64) -> Result<Report, LabError> {
    let words = enumerate_words(&rg.presentation(), max_syllables, max_exp);
    let results: Vec<(bool, bool)> = words
        .par_iter()
        .map(|w| rg.realize(w).map(|m| (m.is_identity(), m.is_central())))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new("injectivity", &["word"]);
    let mut central = 0usize;
    for (w, (identity, is_central)) in words.iter().zip(&results) {
        if *identity {
            report.push(vec![w.to_string()]);
        }
        if *is_central && !*identity {
            central += 1;
        }
    }
    report.set("words_checked", words.len());
    report.set("kernel_hits", report.rows.len());
    report.set("central_hits", central);
    report.set_verdict(verdict(report.rows.is_empty()));
    Ok(report)
}

/// Seed slopes for the growth cross-check; the first with nonzero
/// intersection against every iterate is used.
const GROWTH_SEEDS: [(i64, i64); 3] = [(1, 1), (2, 3), (-3, 5)];

/// Every word whose cyclic reduction has at least two syllables realizes to
/// a hyperbolic matrix. Rows list violations; `growth_sample` words are
/// also checked by intersection growth.
pub fn pa_scan(
    rg: &RealizedGroup,
    max_syllables: usize,
    max_exp: i64,
    growth_sample: usize,
    seed: u64,
) -> Result<Report, LabError> {
    let words = enumerate_words(&rg.presentation(), max_syllables, max_exp);
    let eligible: Vec<&Word> = words.iter().filter(|w| !w.is_conjugate_into_factor()).collect();
    let traces: Vec<BigInt> = eligible
        .par_iter()
        .map(|w| rg.realize(w).map(|m| m.trace()))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new("pseudo_anosov", &["word", "trace", "check"]);
    for (w, t) in eligible.iter().zip(&traces) {
        if t.abs() <= BigInt::from(2) {
            report.push(vec![w.to_string(), t.to_string(), "trace".into()]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut growth_checked = 0usize;
    let mut growth_min = f64::INFINITY;
    for _ in 0..growth_sample.min(eligible.len()) {
        let w = eligible[rng.gen_range(0..eligible.len())];
        let m = rg.realize(w)?;
        let ratio = GROWTH_SEEDS
            .iter()
            .find_map(|&(p, q)| intersection_growth(&m, &Slope::int(p, q), 8).ok());
        if let Some(r) = ratio {
            growth_checked += 1;
            growth_min = growth_min.min(r);
            if is_pseudo_anosov(&m) != (r > 1.5) {
                report.push(vec![w.to_string(), m.trace().to_string(), format!("growth {r:.4}")]);
            }
        }
    }
    report.set("words_checked", eligible.len());
    report.set("words_excluded", words.len() - eligible.len());
    report.set("violations", report.rows.len());
    report.set("growth_checked", growth_checked);
    if growth_checked > 0 {
        report.set("growth_min", format!("{growth_min:.6}"));
    }
    report.set_verdict(verdict(report.rows.is_empty()));
    Ok(report)
}

/// Freeness of `<t_α^pa, t_β^pb>` read off the normalized generators:
/// after moving `α` to `1/0` and `β` to `0`, they are `[[1, -pa], [0, 1]]`
/// and `[[1, 0], [pb·q², 1]]` with `q = |det(α, β)|`, and such a pair
/// generates a free group when the product of off-diagonal entries has
/// absolute value at least 4.
pub fn free_group_criterion(rg: &RealizedGroup) -> bool {
    let g = crate::projection::AnnularDomain::new(rg.alpha().clone()).conjugator();
    let beta = g.apply(rg.beta());
    let (pa, pb) = rg.powers();
    let q = beta.q().clone();
    (BigInt::from(pa) * BigInt::from(pb) * &q * &q).abs() >= BigInt::from(4)
}

/// Scans each realized pair and reports the smallest `D` passing both
/// scans. Fails if the free-group criterion holds somewhere the
/// injectivity scan finds a kernel element.
pub fn d0_probe(
    family: &[RealizedGroup],
    max_syllables: usize,
    max_exp: i64,
    seed: u64,
) -> Result<Report, LabError> {
    let mut report = Report::new(
        "d0_probe",
        &["D", "alpha", "beta", "intersection", "kernel_hits", "pa_violations", "free_criterion", "passes"],
    );
    let mut minimal: Option<u64> = None;
    let mut consistent = true;
    for rg in family {
        let inj = injectivity_scan(rg, max_syllables, max_exp)?;
        let pa = pa_scan(rg, max_syllables, max_exp, 0, seed)?;
        let free = free_group_criterion(rg);
        let passes = inj.passed() && pa.passed();
        if free && !inj.passed() {
            consistent = false;
        }
        if passes && minimal.is_none() {
            minimal = Some(rg.d());
        }
        let i = crate::farey::geometric_intersection(rg.alpha(), rg.beta(), rg.surface());
        report.push(vec![
            rg.d().to_string(),
            rg.alpha().to_string(),
            rg.beta().to_string(),
            i.to_string(),
            inj.get("kernel_hits").unwrap_or("0").to_string(),
            pa.get("violations").unwrap_or("0").to_string(),
            free.to_string(),
            verdict(passes).to_string(),
        ]);
    }
    report.set("minimal_passing_D", minimal.map_or("none".to_string(), |d| d.to_string()));
    report.set("criterion_consistent", consistent);
    report.set_verdict(if consistent { Verdict::Pass } else { Verdict::Fail });
    Ok(report)
}
