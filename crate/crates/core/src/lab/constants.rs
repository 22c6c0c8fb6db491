//! Estimation of the ledger constants for one realized configuration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::projections::{edge_constant_harness, k_of_marking};
use super::report::{verdict, Report};
use super::{qi_fit, FitPolicy, LabError, RealizedGroup};
use crate::farey::{curve_geodesic, farey_ball, farey_box, farey_neighbors, CurveGraph, Slope, SurfaceModel};
use crate::freeprod::{enumerate_words, tree_distance, Factor, TreePoint, Word};
use crate::metric::{estimate_delta, hausdorff_quasigeodesic, ConstantsLedger, LedgerValue};
use crate::projection::{bgim_diameter, AnnularDomain};

/// Thin-triangle constant of the Farey graph restricted to `|p|,|q| <= h`.
pub fn estimate_curve_delta(h: i64) -> Result<u64, LabError> {
    let (_, g) = farey_box(h);
    Ok(estimate_delta(&g)?)
}

/// Maximum bounded-geodesic-image diameter over `samples` geodesics between
/// random vertices of the Farey ball of radius `radius` about `1/0`. Each
/// geodesic is paired with a core off it: a Farey neighbour of one of its
/// vertices (the cores that see the most twisting) on even draws, a random
/// ball vertex on odd ones. Returns the per-sample diameters in draw order.
pub fn bgim_sample(radius: u64, samples: usize, seed: u64, s: &SurfaceModel) -> Result<Vec<u64>, LabError> {
    let (ball, _) = farey_ball(&Slope::infinity(), radius, 4 * radius as i64 + 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let a = &ball[rng.gen_range(0..ball.len())];
        let b = &ball[rng.gen_range(0..ball.len())];
        if a == b {
            continue;
        }
        let path = curve_geodesic(a, b, s);
        let core = if out.len() % 2 == 0 {
            let v = &path[rng.gen_range(0..path.len())];
            let nbrs = farey_neighbors(v, 3);
            nbrs[rng.gen_range(0..nbrs.len())].clone()
        } else {
            ball[rng.gen_range(0..ball.len())].clone()
        };
        if let Some(d) = bgim_diameter(&path, &AnnularDomain::new(core), s)? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Image under `φ` of the tree path from `v0` to `g·v0`, as a walk in the
/// curve graph: for each prefix `p` of `g` the path runs along the edge of
/// `p` between its midpoint and the end shared with the next prefix.
pub fn phi_tree_path(rg: &RealizedGroup, g: &Word) -> Result<Vec<Slope>, LabError> {
    let mid = rg.midpoint_index();
    let d = rg.d() as usize;
    let geod = rg.geodesic();
    let mut walk: Vec<Slope> = Vec::new();
    let push = |s: Slope, walk: &mut Vec<Slope>| {
        if walk.last() != Some(&s) {
            walk.push(s);
        }
    };
    let mut prefix = Word::identity();
    push(rg.phi(&TreePoint::v0())?, &mut walk);
    for syl in g.syllables() {
        let here = rg.realize(&prefix)?;
        let out: Vec<usize> = match syl.factor {
            Factor::A => (0..=mid).rev().collect(),
            Factor::B => (mid..=d).collect(),
        };
        for j in out {
            push(here.apply(&geod[j]), &mut walk);
        }
        prefix = prefix.mul(&Word::syllable(syl.factor, syl.exps.clone()));
        let there = rg.realize(&prefix)?;
        let back: Vec<usize> = match syl.factor {
            Factor::A => (0..=mid).collect(),
            Factor::B => (mid..=d).rev().collect(),
        };
        for j in back {
            push(there.apply(&geod[j]), &mut walk);
        }
    }
    Ok(walk)
}

/// Sample sizes and bounds for [`estimate_constants`].
#[derive(Debug, Clone)]
pub struct ConstantsOptions {
    /// Box bound for the thin-triangle estimate.
    pub delta_box: i64,
    pub bgim_radius: u64,
    pub bgim_samples: usize,
    /// Word bounds for the quasiisometry fit and the stability radius.
    pub max_syllables: usize,
    pub max_exp: i64,
    pub edge_samples: usize,
    pub a2: f64,
    pub seed: u64,
}

impl Default for ConstantsOptions {
    fn default() -> Self {
        Self {
            delta_box: 5,
            bgim_radius: 6,
            bgim_samples: 500,
            max_syllables: 3,
            max_exp: 2,
            edge_samples: 400,
            a2: 6.0,
            seed: 1,
        }
    }
}

/// Fills the ledger for `rg`: estimated `δ`, `M`, `K0`, `C0`, `R0`, `C1`,
/// `C2`, the default `N`, the configured `A2`, and everything derivable
/// from those. Reports one row per constant and whether each sampled
/// maximum survived halving its sample.
pub fn estimate_constants(rg: &RealizedGroup, opts: &ConstantsOptions) -> Result<Report, LabError> {
    let mut ledger = ConstantsLedger::new();
    let mut report = Report::new("constants", &["name", "value", "half_sample", "stable"]);
    let mut all_stable = true;
    let mut row = |report: &mut Report, name: &str, full: String, half: String| {
        let stable = full == half;
        all_stable &= stable;
        report.push(vec![name.into(), full, half, stable.to_string()]);
    };

    let delta = estimate_curve_delta(opts.delta_box)?;
    let delta_half = estimate_curve_delta((opts.delta_box - 1).max(2))?;
    ledger.estimate("delta", LedgerValue::int(delta as i64), format!("Farey box |p|,|q| <= {}", opts.delta_box))?;
    row(&mut report, "delta", delta.to_string(), delta_half.to_string());

    let bgim = bgim_sample(opts.bgim_radius, opts.bgim_samples, opts.seed, rg.surface())?;
    let m = bgim.iter().copied().max().unwrap_or(0);
    let m_half = bgim[..bgim.len() / 2].iter().copied().max().unwrap_or(0);
    ledger.estimate(
        "bgim_M",
        LedgerValue::int(m as i64),
        format!("{} geodesics in the Farey ball of radius {}", bgim.len(), opts.bgim_radius),
    )?;
    row(&mut report, "bgim_M", m.to_string(), m_half.to_string());
    ledger.configure("power_N", ConstantsLedger::default_power_n(&LedgerValue::int(m as i64)))?;

    let mut words = vec![Word::identity()];
    words.extend(enumerate_words(&rg.presentation(), opts.max_syllables, opts.max_exp));
    let d = rg.d() as f64;
    let mut pairs = Vec::new();
    for side in [Factor::A, Factor::B] {
        let base = TreePoint::w(side, &Word::identity());
        let x = rg.phi(&base)?;
        for g in &words {
            for other in [Factor::A, Factor::B] {
                let w = TreePoint::w(other, g);
                let t = tree_distance(&base, &w);
                let source = d * (*t.numer() as f64) / (*t.denom() as f64);
                pairs.push((source, rg.distance(&x, &rg.phi(&w)?) as f64));
            }
        }
    }
    let fit = qi_fit(&pairs, FitPolicy::AdditiveBudget(1.0))?;
    let sample = format!("phi on W-vertex pairs, words <= {} syllables, |exp| <= {}", opts.max_syllables, opts.max_exp);
    ledger.estimate("qi_K", LedgerValue::Float(*fit.k()), sample.clone())?;
    ledger.estimate("qi_C", LedgerValue::Float(*fit.c()), sample)?;
    let fit_half = qi_fit(&pairs[..pairs.len() / 2], FitPolicy::AdditiveBudget(1.0))?;
    row(&mut report, "qi_K", format!("{:.4}", fit.k()), format!("{:.4}", fit_half.k()));

    let graph = CurveGraph { surface: *rg.surface() };
    let mut r0 = Vec::with_capacity(words.len());
    for g in &words {
        r0.push(hausdorff_quasigeodesic(&phi_tree_path(rg, g)?, &graph)?);
    }
    let r0_full = r0.iter().copied().max().unwrap_or(0);
    let r0_half = r0[..r0.len() / 2].iter().copied().max().unwrap_or(0);
    ledger.estimate(
        "stability_R0",
        LedgerValue::int(r0_full as i64),
        format!("images of tree paths from v0, {} words", words.len()),
    )?;
    row(&mut report, "stability_R0", r0_full.to_string(), r0_half.to_string());

    let edges = edge_constant_harness(rg, opts.edge_samples, opts.seed)?;
    for (name, half) in [("edge_C1", "edge_C1_half_sample"), ("halfedge_C2", "halfedge_C2_half_sample")] {
        let v: i64 = edges.get(name).and_then(|s| s.parse().ok()).unwrap_or(0);
        ledger.estimate(name, LedgerValue::int(v), format!("{} sampled annuli", opts.edge_samples))?;
        row(&mut report, name, v.to_string(), edges.get(half).unwrap_or("-").to_string());
    }

    ledger.configure("A2", LedgerValue::Float(opts.a2))?;
    let xi = i64::from(rg.surface().complexity());
    ledger.derive(Some(&LedgerValue::Float(k_of_marking(rg))), xi);

    report.set("D", rg.d());
    report.set("all_stable", all_stable);
    report.set_verdict(verdict(all_stable && edges.passed()));
    report.ledger = Some(ledger);
    Ok(report)
}
