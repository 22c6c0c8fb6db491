//! Comparisons against marking-graph distance: the distance-formula
//! estimator on a ball, and the orbit map `μ: V → 𝓜`.

use std::collections::HashSet;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{verdict, Report};
use super::{qi_fit, random_word, within_relative, FitPolicy, LabError, RealizedGroup};
use crate::freeprod::{total_distance, TreePoint, Word};
use crate::markings::{distance_formula_estimate, marking_distance, min_threshold, MarkingBall, MarkingError, MarkingGraphConfig};

/// Options for [`estimator_comparability`].
#[derive(Debug, Clone)]
pub struct EstimatorOptions {
    pub radius: u64,
    /// Pairs in the larger sample; the smaller is its first half.
    pub pairs: usize,
    pub a2: f64,
    pub neighbor_reach: i64,
    /// Additive constant the multiplicative fit is made under.
    pub budget: f64,
    pub max_k: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        Self {
            radius: 4,
            pairs: 400,
            a2: 6.0,
            neighbor_reach: 3,
            budget: 6.0,
            max_k: 20.0,
            tolerance: 0.2,
            seed: 11,
        }
    }
}

/// Marking distance against the distance-formula estimate over sampled
/// pairs in the ball about the base marking. Passes when the fitted `K`
/// (under the additive budget) is at most `max_k` and the fit on half the
/// pairs is within `tolerance` of the full fit.
pub fn estimator_comparability(
    cfg: &MarkingGraphConfig,
    opts: &EstimatorOptions,
    cache: Option<&Path>,
) -> Result<Report, LabError> {
    let floor = min_threshold(cfg.r);
    if opts.a2 <= floor {
        return Err(MarkingError::ThresholdTooSmall { a2: opts.a2.to_string(), min: floor.to_string() }.into());
    }
    let ball = MarkingBall::load_or_build(cfg, &cfg.base(), opts.radius, cache)?;
    let n = ball.markings.len();
    if n < 2 {
        return Err(LabError::Config("ball has fewer than two markings".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut seen = HashSet::new();
    let mut pairs = Vec::with_capacity(opts.pairs);
    let target = opts.pairs.min(n * (n - 1) / 2);
    while pairs.len() < target {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j && seen.insert((i.min(j), i.max(j))) {
            pairs.push((i.min(j), i.max(j)));
        }
    }
    let cap = 2 * opts.radius;
    let s = cfg.surface;
    let measured: Vec<(u64, u64, String)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (m1, m2) = (&ball.markings[i], &ball.markings[j]);
            let d = marking_distance(m1, m2, cfg, cap)?
                .ok_or_else(|| LabError::RadiusCap(format!("{m1} to {m2}")))?;
            let e = distance_formula_estimate(m1, m2, opts.a2, opts.neighbor_reach, &s)?;
            let top = e.witnesses.first().map_or_else(|| "-".to_string(), |(dom, t)| format!("{dom}:{t}"));
            Ok((d, e.total, top))
        })
        .collect::<Result<_, LabError>>()?;
    let xy: Vec<(f64, f64)> = measured.iter().map(|(d, e, _)| (*d as f64, *e as f64)).collect();
    let full = qi_fit(&xy, FitPolicy::AdditiveBudget(opts.budget))?;
    let half = qi_fit(&xy[..xy.len() / 2], FitPolicy::AdditiveBudget(opts.budget))?;

    let mut report = Report::new("distance_formula", &["m1", "m2", "marking_distance", "estimate", "top_witness"]);
    for (&(i, j), (d, e, top)) in pairs.iter().zip(&measured) {
        report.push(vec![
            ball.markings[i].to_string(),
            ball.markings[j].to_string(),
            d.to_string(),
            e.to_string(),
            top.clone(),
        ]);
    }
    let stable = within_relative(*full.k(), *half.k(), opts.tolerance);
    let bounded = *full.k() <= opts.max_k;
    report.set("ball_size", n);
    report.set("pairs", pairs.len());
    report.set("A2", opts.a2);
    report.set("K", full.k());
    report.set("C", opts.budget);
    report.set("K_half_sample", half.k());
    report.set("max_distance", measured.iter().map(|m| m.0).max().unwrap_or(0));
    report.set("stable", stable);
    report.set("K_bounded", bounded);
    report.set_verdict(verdict(stable && bounded && pairs.len() >= 2));
    Ok(report)
}

/// Options for [`orbit_distortion_check`].
#[derive(Debug, Clone)]
pub struct DistortionOptions {
    /// Words in each of the two disjoint samples.
    pub words: usize,
    pub max_syllables: usize,
    pub max_exp: i64,
    pub radius_cap: u64,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for DistortionOptions {
    fn default() -> Self {
        Self {
            words: 60,
            max_syllables: 4,
            max_exp: 2,
            radius_cap: 40,
            tolerance: 0.2,
            seed: 5,
        }
    }
}

/// Lower-bound slope `1/K` of `μ: V → 𝓜` against the exact distance on the
/// flat-and-edge complex, fitted with no additive slack on two disjoint
/// word samples. By equivariance each pair is `(v0, g·v0)`.
pub fn orbit_distortion_check(
    rg: &RealizedGroup,
    cfg: &MarkingGraphConfig,
    opts: &DistortionOptions,
) -> Result<Report, LabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let p = rg.presentation();
    let mut seen: HashSet<Word> = HashSet::new();
    let mut words = Vec::with_capacity(2 * opts.words);
    let mut attempts = 0;
    while words.len() < 2 * opts.words && attempts < 1000 * opts.words.max(1) {
        attempts += 1;
        let g = random_word(&mut rng, &p, opts.max_syllables, opts.max_exp);
        if seen.insert(g.clone()) {
            words.push(g);
        }
    }
    if words.len() < 4 {
        return Err(LabError::Config("too few distinct words for two samples".into()));
    }
    let mu0 = rg.base_marking();
    let v0 = TreePoint::v0();
    let measured: Vec<(f64, u64)> = words
        .par_iter()
        .map(|g| {
            let source = total_distance(&v0, &TreePoint::v(g.clone()))?;
            let target = marking_distance(&mu0, &rg.orbit_marking(g)?, cfg, opts.radius_cap)?
                .ok_or_else(|| LabError::RadiusCap(g.to_string()))?;
            Ok((*source.numer() as f64 / *source.denom() as f64, target))
        })
        .collect::<Result<_, LabError>>()?;
    let half = words.len() / 2;
    let xy: Vec<(f64, f64)> = measured.iter().map(|(x, y)| (*x, *y as f64)).collect();
    let first = qi_fit(&xy[..half], FitPolicy::AdditiveBudget(0.0))?;
    let second = qi_fit(&xy[half..], FitPolicy::AdditiveBudget(0.0))?;

    let mut report = Report::new("distortion", &["sample", "word", "tree_distance", "marking_distance"]);
    for (i, (g, (x, y))) in words.iter().zip(&measured).enumerate() {
        let sample = if i < half { "1" } else { "2" };
        report.push(vec![sample.into(), g.to_string(), x.to_string(), y.to_string()]);
    }
    let (s1, s2) = (1.0 / first.k(), 1.0 / second.k());
    let stable = within_relative(s1, s2, opts.tolerance);
    report.set("slope_sample_1", format!("{s1:.6}"));
    report.set("slope_sample_2", format!("{s2:.6}"));
    report.set("K_sample_1", first.k());
    report.set("K_sample_2", second.k());
    report.set("stable", stable);
    report.set("words", words.len());
    report.set_verdict(verdict(s1 > 0.0 && s2 > 0.0 && stable));
    Ok(report)
}
