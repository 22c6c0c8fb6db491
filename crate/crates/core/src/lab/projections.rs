//! Annular projection constants along the tree: edge and half-edge bounds,
//! flat projections of orbit markings, and the off-orbit bound.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{verdict, Report};
use super::{ledger_f64, random_word, LabError, RealizedGroup};
use crate::farey::{random_slope, Slope};
use crate::freeprod::{enumerate_words, flat_term, tree_distance, w_vertices_between, Factor, PointKind, TreePoint, Word};
use crate::markings::{k_of, Marking};
use crate::metric::ConstantsLedger;
use crate::projection::{annular_distance, projection_diameter, AnnularDomain};
use crate::TreeLength;

/// Diameter of the union of the projections of two slope sets; `None` when
/// nothing projects.
fn pair_diameter(a: &[Slope], b: &[Slope], y: &AnnularDomain) -> Option<u64> {
    let both: Vec<Slope> = a.iter().chain(b).cloned().collect();
    projection_diameter(&both, y)
}

/// Annuli to sweep: cores of orbit `W`-vertices from random words, then
/// random cores, alternating. A prefix of the list is the smaller sample.
fn sample_domains(rg: &RealizedGroup, n: usize, seed: u64) -> Result<Vec<AnnularDomain>, LabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rg.presentation();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let core = if out.len() % 2 == 0 {
            let g = random_word(&mut rng, &p, 4, 3);
            let side = if rng.gen_bool(0.5) { Factor::A } else { Factor::B };
            rg.phi(&TreePoint::w(side, &g))?
        } else {
            random_slope(&mut rng, 40)
        };
        out.push(AnnularDomain::new(core));
    }
    Ok(out)
}

fn running_max(values: &[u64], n: usize) -> u64 {
    values[..n.min(values.len())].iter().copied().max().unwrap_or(0)
}

/// Empirical `C1 = max d_Z(α, β)` over annuli `Z` off the base edge and
/// `C2 = max d_Z(μ(v0), α or β)` over annuli off the half-edges. Both maxima
/// are recomputed on half the sample, and the verdict requires them to
/// agree. Also spot-checks that translating the edge and the annulus by a
/// group element leaves the value unchanged.
pub fn edge_constant_harness(rg: &RealizedGroup, samples: usize, seed: u64) -> Result<Report, LabError> {
    let domains = sample_domains(rg, samples, seed)?;
    let (alpha, beta) = (rg.alpha(), rg.beta());
    let mu = rg.base_marking();
    let mut report = Report::new("edge_constants", &["core", "edge", "half_edge"]);
    let mut edge = Vec::new();
    let mut half = Vec::new();
    for y in &domains {
        let core = y.core();
        let e = if core != alpha && core != beta { Some(annular_distance(y, alpha, beta)?) } else { None };
        let h = if core != alpha && core != beta && !mu.contains(core) {
            let a = pair_diameter(mu.slopes(), std::slice::from_ref(alpha), y).unwrap_or(0);
            let b = pair_diameter(mu.slopes(), std::slice::from_ref(beta), y).unwrap_or(0);
            Some(a.max(b))
        } else {
            None
        };
        edge.extend(e);
        half.extend(h);
        let show = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        report.push(vec![core.to_string(), show(e), show(h)]);
    }
    let (c1, c2) = (running_max(&edge, edge.len()), running_max(&half, half.len()));
    let (c1_half, c2_half) = (running_max(&edge, edge.len() / 2), running_max(&half, half.len() / 2));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut equivariance_failures = 0usize;
    for y in domains.iter().take(50) {
        if y.core() == alpha || y.core() == beta {
            continue;
        }
        let g = rg.realize(&random_word(&mut rng, &rg.presentation(), 4, 3))?;
        let moved = annular_distance(&y.translate(&g), &g.apply(alpha), &g.apply(beta))?;
        if moved != annular_distance(y, alpha, beta)? {
            equivariance_failures += 1;
        }
    }
    let stable = c1 == c1_half && c2 == c2_half;
    report.set("edge_C1", c1);
    report.set("halfedge_C2", c2);
    report.set("edge_C1_half_sample", c1_half);
    report.set("halfedge_C2_half_sample", c2_half);
    report.set("stable", stable);
    report.set("equivariance_failures", equivariance_failures);
    report.set_verdict(verdict(stable && equivariance_failures == 0));
    Ok(report)
}

/// `V`-point of the flat of `w` closest to `v`.
fn flat_projection(w: &TreePoint, v: &TreePoint) -> TreePoint {
    let PointKind::W(side) = w.kind() else { unreachable!("caller passes W-vertices") };
    let u = w.coset_word().left_divide(v.coset_word());
    let step = match u.syllables().first() {
        Some(s) if s.factor == side => Word::syllable(side, s.exps.clone()),
        _ => Word::identity(),
    };
    TreePoint::v(w.coset_word().mul(&step))
}

/// For sampled pairs `v1, v2` and every `W`-vertex `w` between them with a
/// nonzero flat term, `d_{A(w)}(μ(v1), μ(π_w(v1)))` against the ledger's
/// `proj_C3`. When `w` is adjacent to `v1` the value is also held to the
/// sharper `(P0 - 1)C1 + 2C2`.
///
/// Also checks the premise that the curve geodesic from `φ(v1)` to
/// `φ(π_w(v1))` avoids the core of `A(w)` whenever `v1` is more than `P0`
/// from `w` in the tree.
pub fn flat_projection_check(
    rg: &RealizedGroup,
    pairs: usize,
    max_syllables: usize,
    max_exp: i64,
    seed: u64,
    ledger: &ConstantsLedger,
) -> Result<Report, LabError> {
    let c3 = ledger_f64(ledger, "proj_C3")?;
    let p0 = ledger_f64(ledger, "local_P0")?;
    let c1 = ledger_f64(ledger, "edge_C1")?;
    let c2 = ledger_f64(ledger, "halfedge_C2")?;
    let case_one = (p0 - 1.0) * c1 + 2.0 * c2;
    let p = rg.presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("flat_projection", &["v1", "v2", "w", "flat_term", "coefficient", "bound", "verdict"]);
    let mut ok = true;
    let mut worst = 0u64;
    let mut premise_checked = 0usize;
    let mut premise_failures = 0usize;
    for _ in 0..pairs {
        let v1 = TreePoint::v(random_word(&mut rng, &p, max_syllables, max_exp));
        let v2 = TreePoint::v(random_word(&mut rng, &p, max_syllables, max_exp));
        let mu1 = rg.orbit_marking(v1.coset_word())?;
        for w in w_vertices_between(&v1, &v2)? {
            if flat_term(&w, &v1, &v2)? == 0 {
                continue;
            }
            let y = AnnularDomain::new(rg.phi(&w)?);
            let target = flat_projection(&w, &v1);
            let coefficient = if target == v1 {
                0
            } else {
                let mu2 = rg.orbit_marking(target.coset_word())?;
                pair_diameter(mu1.slopes(), mu2.slopes(), &y).unwrap_or(0)
            };
            let adjacent = tree_distance(&v1, &w) == TreeLength::new(1, 2);
            let bound = if adjacent { case_one.min(c3) } else { c3 };
            let pass = coefficient as f64 <= bound;
            ok &= pass;
            worst = worst.max(coefficient);
            if tree_distance(&v1, &w) > TreeLength::from_integer(p0.floor() as i64) {
                premise_checked += 1;
                let path = crate::farey::curve_geodesic(&rg.phi(&v1)?, &rg.phi(&target)?, rg.surface());
                if path.contains(y.core()) {
                    premise_failures += 1;
                }
            }
            report.push(vec![
                v1.to_string(),
                v2.to_string(),
                w.to_string(),
                flat_term(&w, &v1, &v2)?.to_string(),
                coefficient.to_string(),
                format!("{bound:.4}"),
                verdict(pass).to_string(),
            ]);
        }
    }
    report.set("proj_C3", c3);
    report.set("adjacent_bound", case_one);
    report.set("empirical_C3", worst);
    report.set("premise_checked", premise_checked);
    report.set("premise_failures", premise_failures);
    report.set_verdict(verdict(ok && premise_failures == 0));
    Ok(report)
}

/// Curves `φ(w)` for every `W`-vertex reached by words within the bounds.
pub fn orbit_curves(rg: &RealizedGroup, max_syllables: usize, max_exp: i64) -> Result<HashSet<Slope>, LabError> {
    let mut words = vec![Word::identity()];
    words.extend(enumerate_words(&rg.presentation(), max_syllables, max_exp));
    let mut out = HashSet::new();
    for g in &words {
        for side in [Factor::A, Factor::B] {
            out.insert(rg.phi(&TreePoint::w(side, g))?);
        }
    }
    Ok(out)
}

/// Options for [`off_orbit_projection_check`].
#[derive(Debug, Clone)]
pub struct OffOrbitOptions {
    /// Sampled group elements `g`, compared through `d_Y(μ(v0), μ(g·v0))`.
    pub words: usize,
    pub max_syllables: usize,
    pub max_exp: i64,
    /// Sampled off-orbit cores.
    pub cores: usize,
    pub core_bound: i64,
    /// Orbit enumeration used to certify cores as off-orbit.
    pub orbit_syllables: usize,
    pub orbit_exp: i64,
    /// Twist powers for the on-orbit contrast at `α`.
    pub contrast_max: i64,
    pub seed: u64,
}

impl Default for OffOrbitOptions {
    fn default() -> Self {
        Self {
            words: 200,
            max_syllables: 4,
            max_exp: 3,
            cores: 60,
            core_bound: 12,
            orbit_syllables: 4,
            orbit_exp: 3,
            contrast_max: 40,
            seed: 7,
        }
    }
}

/// Empirical `M1 = max d_Y(μ(v1), μ(v2))` over annuli `Y` whose core is not
/// an orbit curve. The off-orbit cores are invariant under the group, so
/// `v1 = v0` loses nothing. `M1` from the first half of the words must equal
/// the full-sample value. As a contrast, `d_α(μ(v0), μ(a^n v0))` must be at
/// least `|n|·pa - 5`.
pub fn off_orbit_projection_check(rg: &RealizedGroup, opts: &OffOrbitOptions) -> Result<Report, LabError> {
    let orbit = orbit_curves(rg, opts.orbit_syllables, opts.orbit_exp)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cores: Vec<Slope> = Vec::new();
    let mut seen = HashSet::new();
    let mut attempts = 0;
    while cores.len() < opts.cores && attempts < 100 * opts.cores.max(1) {
        attempts += 1;
        let c = random_slope(&mut rng, opts.core_bound);
        if !orbit.contains(&c) && seen.insert(c.clone()) {
            cores.push(c);
        }
    }
    if cores.is_empty() {
        return Err(LabError::Config("no off-orbit core found within the bound".into()));
    }
    let p = rg.presentation();
    let mut words = Vec::with_capacity(opts.words);
    let mut seen_words = HashSet::new();
    attempts = 0;
    while words.len() < opts.words && attempts < 100 * opts.words.max(1) {
        attempts += 1;
        let g = random_word(&mut rng, &p, opts.max_syllables, opts.max_exp);
        if seen_words.insert(g.clone()) {
            words.push(g);
        }
    }
    let mu0 = rg.base_marking();
    let markings: Vec<Marking> = words.iter().map(|g| rg.orbit_marking(g)).collect::<Result<_, _>>()?;
    let domains: Vec<AnnularDomain> = cores.iter().cloned().map(AnnularDomain::new).collect();
    let per_word: Vec<u64> = markings
        .iter()
        .map(|m| {
            domains
                .iter()
                .filter_map(|y| pair_diameter(mu0.slopes(), m.slopes(), y))
                .max()
                .unwrap_or(0)
        })
        .collect();

    let mut report = Report::new("off_orbit_projection", &["series", "input", "coefficient", "bound", "verdict"]);
    for (g, d) in words.iter().zip(&per_word) {
        report.push(vec!["off_orbit".into(), g.to_string(), d.to_string(), "-".into(), "-".into()]);
    }
    let m1 = running_max(&per_word, per_word.len());
    let m1_half = running_max(&per_word, per_word.len() / 2);

    let y = AnnularDomain::new(rg.alpha().clone());
    let (pa, _) = rg.powers();
    let mut contrast_ok = true;
    for n in 1..=opts.contrast_max {
        let g = Word::syllable(Factor::A, vec![n]);
        let m = rg.orbit_marking(&g)?;
        let d = pair_diameter(mu0.slopes(), m.slopes(), &y).unwrap_or(0);
        let bound = (n * pa).abs() - 5;
        let pass = d as i64 >= bound;
        contrast_ok &= pass;
        report.push(vec!["on_orbit".into(), g.to_string(), d.to_string(), bound.to_string(), verdict(pass).to_string()]);
    }
    let stable = m1 == m1_half;
    report.set("bound_M1", m1);
    report.set("bound_M1_half_sample", m1_half);
    report.set("off_orbit_cores", cores.len());
    report.set("words", words.len());
    report.set("stable", stable);
    report.set("contrast_ok", contrast_ok);
    report.set_verdict(verdict(stable && contrast_ok));
    Ok(report)
}

/// `k(R)` for the marking parameter of the realized surface, as a ledger
/// value for the `proj_C3` formula.
pub(crate) fn k_of_marking(rg: &RealizedGroup) -> f64 {
    k_of(u64::from(rg.surface().intersection_multiplier()))
}
