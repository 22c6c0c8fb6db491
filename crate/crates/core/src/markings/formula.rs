use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use super::{slopes_within, Marking, MarkingError};
use crate::farey::{curve_distance, curve_geodesic, farey_neighbors, geometric_intersection, Slope, SurfaceModel};
use crate::projection::{projection_diameter, AnnularDomain};

/// `max(2·log2(4(A+1)) + 2, A + 1)`, the bound on the annular diameter of
/// an `A`-marking.
pub fn k_of(a: u64) -> f64 {
    let a = a as f64;
    (2.0 * (4.0 * (a + 1.0)).log2() + 2.0).max(a + 1.0)
}

/// Thresholds at or below `max(R + 1, 2·log2 R + 2)` let a single marking's
/// own spread leak into the sum.
pub fn min_threshold(r: u64) -> f64 {
    let r = r as f64;
    (r + 1.0).max(2.0 * r.log2() + 2.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// The whole surface, measured in the curve graph.
    Surface,
    Annulus(AnnularDomain),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Surface => write!(f, "S"),
            Domain::Annulus(y) => write!(f, "{y}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormulaEstimate {
    pub total: u64,
    /// Domains with nonzero truncated term, largest term first.
    pub witnesses: Vec<(Domain, u64)>,
}

impl FormulaEstimate {
    pub fn term(&self, d: &Domain) -> u64 {
        self.witnesses.iter().find(|(x, _)| x == d).map_or(0, |(_, t)| *t)
    }
}

fn union(m1: &Marking, m2: &Marking) -> Vec<Slope> {
    let set: BTreeSet<Slope> = m1.slopes().iter().chain(m2.slopes()).cloned().collect();
    set.into_iter().collect()
}

fn surface_term(slopes: &[Slope], s: &SurfaceModel) -> u64 {
    let mut best = 0;
    for (i, a) in slopes.iter().enumerate() {
        for b in &slopes[i + 1..] {
            best = best.max(curve_distance(a, b, s));
        }
    }
    best
}

fn estimate_over(
    cores: BTreeSet<Slope>,
    m1: &Marking,
    m2: &Marking,
    a2: f64,
    s: &SurfaceModel,
) -> Result<FormulaEstimate, MarkingError> {
    let r = m1.r().max(m2.r());
    let min = min_threshold(r);
    if !(a2 > min) {
        return Err(MarkingError::ThresholdTooSmall {
            a2: a2.to_string(),
            min: min.to_string(),
        });
    }
    let slopes = union(m1, m2);
    let keep = |d: u64| (d as f64 >= a2).then_some(d);
    let mut witnesses = Vec::new();
    if let Some(t) = keep(surface_term(&slopes, s)) {
        witnesses.push((Domain::Surface, t));
    }
    for core in cores {
        let y = AnnularDomain::new(core);
        if let Some(t) = projection_diameter(&slopes, &y).and_then(keep) {
            witnesses.push((Domain::Annulus(y), t));
        }
    }
    witnesses.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(FormulaEstimate {
        total: witnesses.iter().map(|(_, t)| t).sum(),
        witnesses,
    })
}

/// `Σ_Y [d_Y(m1, m2)]_{A2}` over the surface and the annuli whose cores lie
/// on or next to geodesics between the two markings: slopes of either
/// marking, vertices of the geodesics between them, and Farey neighbours of
/// those vertices within `neighbor_reach` steps of the fan.
pub fn distance_formula_estimate(
    m1: &Marking,
    m2: &Marking,
    a2: f64,
    neighbor_reach: i64,
    s: &SurfaceModel,
) -> Result<FormulaEstimate, MarkingError> {
    let mut hull: BTreeSet<Slope> = union(m1, m2).into_iter().collect();
    for a in m1.slopes() {
        for b in m2.slopes() {
            hull.extend(curve_geodesic(a, b, s));
        }
    }
    let mut cores = hull.clone();
    for v in &hull {
        cores.extend(farey_neighbors(v, neighbor_reach));
    }
    estimate_over(cores, m1, m2, a2, s)
}

/// The same sum over every core meeting each slope of both markings at most
/// `cap` times.
pub fn distance_formula_oracle(
    m1: &Marking,
    m2: &Marking,
    a2: f64,
    cap: u64,
    s: &SurfaceModel,
) -> Result<FormulaEstimate, MarkingError> {
    let slopes = union(m1, m2);
    let bound = BigInt::from(cap);
    let cores: BTreeSet<Slope> = slopes_within(&slopes[0], &slopes[1], cap / u64::from(s.intersection_multiplier()))
        .into_iter()
        .filter(|u| slopes.iter().all(|v| geometric_intersection(u, v, s) <= bound))
        .collect();
    estimate_over(cores, m1, m2, a2, s)
}
