//! Checks on translation distances, local quasigeodesics, orbit filling and
//! twist word length.

use std::collections::HashMap;

use super::report::{verdict, Report, Verdict};
use super::{ledger_f64, LabError, RealizedGroup};
use crate::farey::{fills, CurveGraph, Slope};
use crate::freeprod::{enumerate_words, Factor, ScaledPoint, TreePoint, Word};
use crate::metric::{check_comparable, is_local_quasigeodesic, ComparabilityBound, ConstantsLedger};
use crate::projection::{annular_distance, AnnularDomain};

fn b_power(k: i64) -> Word {
    Word::syllable(Factor::B, vec![k])
}

/// `d(α, Φ(h)α) >= (2D - 4)/N` for `h = b^k`, `N = power_N` from the ledger.
pub fn translation_lower_bound_check(
    rg: &RealizedGroup,
    exponents: &[i64],
    ledger: &ConstantsLedger,
) -> Result<Report, LabError> {
    let n = ledger_f64(ledger, "power_N")?;
    let bound = (2.0 * rg.d() as f64 - 4.0) / n;
    let mut report = Report::new("translation_lower_bound", &["h", "distance", "bound", "slack", "verdict"]);
    let mut ok = true;
    let mut min_slack = f64::INFINITY;
    for &k in exponents.iter().filter(|&&k| k != 0) {
        let h = b_power(k);
        let d = rg.distance(rg.alpha(), &rg.realize(&h)?.apply(rg.alpha())) as f64;
        let pass = d >= bound;
        ok &= pass;
        min_slack = min_slack.min(d - bound);
        report.push(vec![
            h.to_string(),
            d.to_string(),
            format!("{bound:.6}"),
            format!("{:.6}", d - bound),
            verdict(pass).to_string(),
        ]);
    }
    report.set("D", rg.d());
    report.set("power_N", n);
    report.set("bound", format!("{bound:.6}"));
    report.set("min_slack", format!("{min_slack:.6}"));
    report.set_verdict(if bound <= 0.0 && ok { Verdict::Vacuous } else { verdict(ok) });
    Ok(report)
}

/// `d(α, Φ(h)α) >= 2D - 2((N+1)δ + 2)`; flags the bound as vacuous when it
/// is not positive and records the best additive constant `c` with
/// `d >= 2D - c` over the sample.
pub fn thin_translation_check(
    rg: &RealizedGroup,
    exponents: &[i64],
    ledger: &ConstantsLedger,
) -> Result<Report, LabError> {
    let n = ledger_f64(ledger, "power_N")?;
    let delta = ledger_f64(ledger, "delta")?;
    let two_d = 2.0 * rg.d() as f64;
    let bound = two_d - 2.0 * ((n + 1.0) * delta + 2.0);
    let mut report = Report::new("thin_translation", &["h", "distance", "bound", "verdict"]);
    let mut ok = true;
    let mut c_emp: f64 = f64::NEG_INFINITY;
    for &k in exponents.iter().filter(|&&k| k != 0) {
        let h = b_power(k);
        let d = rg.distance(rg.alpha(), &rg.realize(&h)?.apply(rg.alpha())) as f64;
        let pass = d >= bound;
        ok &= pass;
        c_emp = c_emp.max(two_d - d);
        let v = if bound <= 0.0 { Verdict::Vacuous } else { verdict(pass) };
        report.push(vec![h.to_string(), d.to_string(), format!("{bound:.6}"), v.to_string()]);
    }
    report.set("D", rg.d());
    report.set("bound", format!("{bound:.6}"));
    report.set("vacuous", bound <= 0.0);
    report.set("c_empirical", c_emp);
    report.set_verdict(match (ok, bound <= 0.0) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Vacuous,
        (true, false) => Verdict::Pass,
    });
    Ok(report)
}

/// Translation distance `d(α, Φ(b)α)` over a family ordered by `D`, which
/// should not decrease.
pub fn translation_monotonicity(family: &[RealizedGroup]) -> Result<Report, LabError> {
    let mut report = Report::new("translation_monotonicity", &["D", "beta", "distance"]);
    let mut last = 0;
    let mut ok = true;
    for rg in family {
        let h = b_power(1);
        let d = rg.distance(rg.alpha(), &rg.realize(&h)?.apply(rg.alpha()));
        ok &= d >= last;
        last = d;
        report.push(vec![rg.d().to_string(), rg.beta().to_string(), d.to_string()]);
    }
    report.set_verdict(verdict(ok));
    Ok(report)
}

/// Image under `φ` of the two adjacent edges `[a, b]` and `[b, h·a]` of the
/// scaled tree, as one walk from `α` through `β` to `Φ(h)α`.
fn adjacent_edge_path(rg: &RealizedGroup, h: &Word) -> Result<Vec<Slope>, LabError> {
    let d = rg.d();
    let mut path = Vec::with_capacity(2 * d as usize + 1);
    for j in 0..=d {
        path.push(rg.phi_scaled(&ScaledPoint::new(&Word::identity(), j, d)?)?);
    }
    for j in (0..d).rev() {
        path.push(rg.phi_scaled(&ScaledPoint::new(h, j, d)?)?);
    }
    Ok(path)
}

/// Adjacent edges map to `D_local`-local `(1, 13δ + 2C0)`-quasigeodesics.
/// Also records the smallest additive constant that works for the sample.
pub fn local_qg_check(
    rg: &RealizedGroup,
    exponents: &[i64],
    d_local: Option<u64>,
    ledger: &ConstantsLedger,
) -> Result<Report, LabError> {
    let delta = ledger_f64(ledger, "delta")?;
    let c0 = ledger_f64(ledger, "thin_C0")?;
    let c = 13.0 * delta + 2.0 * c0;
    let span = d_local.unwrap_or(2 * rg.d()) as f64;
    let graph = CurveGraph { surface: *rg.surface() };
    let mut report = Report::new("local_quasigeodesic", &["h", "path_length", "max_defect", "verdict"]);
    let mut ok = true;
    let mut worst = 0i64;
    for &k in exponents.iter().filter(|&&k| k != 0) {
        let h = b_power(k);
        let path = adjacent_edge_path(rg, &h)?;
        let pass = is_local_quasigeodesic(&path, &span, &1.0, &c, &graph)?;
        let mut defect = 0i64;
        for i in 0..path.len() {
            for j in i + 1..path.len() {
                let ds = rg.distance(&path[i], &path[j]) as i64;
                defect = defect.max((j - i) as i64 - ds);
                debug_assert!(ds <= (j - i) as i64, "upper bound is automatic");
            }
        }
        worst = worst.max(defect);
        ok &= pass;
        report.push(vec![h.to_string(), path.len().to_string(), defect.to_string(), verdict(pass).to_string()]);
    }
    report.set("D", rg.d());
    report.set("additive_constant", c);
    report.set("empirical_additive_constant", worst);
    report.set_verdict(verdict(ok));
    Ok(report)
}

/// Distinct orbit cosets give distinct curves, and any two of them fill:
/// `Φ(g)α` for cosets `gH_A` and `Φ(g)β` for `gH_B`, over all words within
/// bounds.
pub fn orbit_filling_check(rg: &RealizedGroup, max_syllables: usize, max_exp: i64) -> Result<Report, LabError> {
    let mut words = vec![Word::identity()];
    words.extend(enumerate_words(&rg.presentation(), max_syllables, max_exp));
    let mut seen: HashMap<Slope, TreePoint> = HashMap::new();
    let mut report = Report::new("orbit_filling", &["coset", "other_coset", "curve"]);
    let mut cosets = 0usize;
    for g in &words {
        for side in [Factor::A, Factor::B] {
            let w = TreePoint::w(side, g);
            let curve = rg.phi(&w)?;
            match seen.get(&curve) {
                Some(prev) if *prev != w => {
                    report.push(vec![w.to_string(), prev.to_string(), curve.to_string()]);
                }
                Some(_) => {}
                None => {
                    cosets += 1;
                    seen.insert(curve, w);
                }
            }
        }
    }
    let curves: Vec<&Slope> = seen.keys().collect();
    let mut non_filling = 0usize;
    for (i, a) in curves.iter().enumerate() {
        non_filling += curves[i + 1..].iter().filter(|b| !fills(a, b)).count();
    }
    report.set("cosets", cosets);
    report.set("collisions", report.rows.len());
    report.set("non_filling_pairs", non_filling);
    report.set_verdict(verdict(report.rows.is_empty() && non_filling == 0));
    Ok(report)
}

/// `|n|` against the annular coefficient at `α` between `φ(v0)` and
/// `Φ(a^n)φ(v0)`, which should be `(1, 5)`-comparable.
pub fn twist_word_length_check(rg: &RealizedGroup, ns: &[i64]) -> Result<Report, LabError> {
    let y = AnnularDomain::new(rg.alpha().clone());
    let x = rg.phi(&TreePoint::v0())?;
    let bound = ComparabilityBound::new(1.0, 5.0)?;
    let (pa, _) = rg.powers();
    let mut report = Report::new("twist_word_length", &["n", "word_length", "coefficient", "verdict"]);
    let mut ok = true;
    for &n in ns {
        let len = (n * pa).unsigned_abs() as f64;
        let coeff = if n == 0 {
            0
        } else {
            let moved = rg.realize(&Word::syllable(Factor::A, vec![n]))?.apply(&x);
            annular_distance(&y, &x, &moved)?
        };
        let pass = check_comparable(&len, &(coeff as f64), &bound)?;
        ok &= pass;
        report.push(vec![n.to_string(), len.to_string(), coeff.to_string(), verdict(pass).to_string()]);
    }
    report.set_verdict(verdict(ok));
    Ok(report)
}
