use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::ProjectionError;
use crate::farey::{is_geodesic, twist, FareyError, MappingClass, Slope, SurfaceModel};
use crate::Rational;

/// Annular neighbourhood of a core curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnularDomain {
    core: Slope,
}

impl AnnularDomain {
    pub fn new(core: Slope) -> Self {
        Self { core }
    }

    pub fn core(&self) -> &Slope {
        &self.core
    }

    /// The canonical conjugator sending the core to `1/0`: rows `(x, y)` and
    /// `(-q, p)` with `x p + y q = 1` and `0 <= x < |q|` (identity for `1/0`).
    pub fn conjugator(&self) -> MappingClass {
        let (p, q) = (self.core.p(), self.core.q());
        if q.is_zero() {
            return MappingClass::identity();
        }
        let ext = p.extended_gcd(q);
        // ext.x * p + ext.y * q = ±1
        let sign: BigInt = if ext.gcd.is_negative() { (-1).into() } else { 1.into() };
        let (x0, y0) = (ext.x * &sign, ext.y * &sign);
        // shift (x, y) by multiples of (q, -p) to reduce x
        let k = x0.div_floor(q);
        let x = &x0 - &k * q;
        let y = &y0 + &k * p;
        MappingClass::new(x, y, -q.clone(), p.clone()).expect("unimodular by construction")
    }

    pub fn translate(&self, g: &MappingClass) -> Self {
        Self::new(g.apply(&self.core))
    }
}

impl fmt::Display for AnnularDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ann({})", self.core)
    }
}

impl FromStr for AnnularDomain {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, FareyError> {
        let inner = s
            .trim()
            .strip_prefix("ann(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| FareyError::Parse(format!("expected ann(p/q), got {s:?}")))?;
        Ok(Self::new(inner.parse()?))
    }
}

/// Combinatorial shadow of the lift arcs of a curve in the annular cover.
///
/// With the core conjugated to `1/0`, the curve becomes `P/Q` with `Q > 0`;
/// `twist_index` is `⌊P/Q⌋` and `endpoint_phase` the fractional part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectionClass {
    pub domain: AnnularDomain,
    pub twist_index: BigInt,
    pub endpoint_phase: Rational,
}

impl ProjectionClass {
    pub fn normalized_slope(&self) -> Rational {
        Rational::from_integer(self.twist_index.clone()) + &self.endpoint_phase
    }
}

/// Projection to the annulus; `None` exactly when `a` is the core.
pub fn annular_project(y: &AnnularDomain, a: &Slope) -> Option<ProjectionClass> {
    let img = y.conjugator().apply(a);
    if img.q().is_zero() {
        return None;
    }
    let x = Rational::new(img.p().clone(), img.q().clone());
    let floor = x.floor();
    let twist_index = floor.to_integer();
    // `fract` truncates toward zero; the phase must lie in [0, 1)
    let endpoint_phase = x - floor;
    Some(ProjectionClass {
        domain: y.clone(),
        twist_index,
        endpoint_phase,
    })
}

/// Signed algebraic intersection `α·β` of chosen lift arcs: the twist-index
/// difference corrected by `ε ∈ {-1, 0}` when the endpoint phases are out of
/// order, so that `|α·β| = ⌊|X_α - X_β|⌋` for the normalized slopes `X`.
/// Antisymmetric in its arguments.
pub fn algebraic_intersection(a: &ProjectionClass, b: &ProjectionClass) -> BigInt {
    let forward = a.normalized_slope() >= b.normalized_slope();
    let (hi, lo) = if forward { (a, b) } else { (b, a) };
    let epsilon = if hi.endpoint_phase < lo.endpoint_phase { -1 } else { 0 };
    let value = &hi.twist_index - &lo.twist_index + epsilon;
    if forward {
        value
    } else {
        -value
    }
}

fn saturate(n: BigInt) -> u64 {
    n.to_u64().unwrap_or(u64::MAX)
}

/// `d_Y` between two projection classes: 0 when equal, else `|α·β| + 1`.
pub fn class_distance(a: &ProjectionClass, b: &ProjectionClass) -> u64 {
    if a == b {
        0
    } else {
        saturate(algebraic_intersection(a, b).abs()) + 1
    }
}

fn project_side(y: &AnnularDomain, a: &Slope, side: usize) -> Result<ProjectionClass, ProjectionError> {
    annular_project(y, a).ok_or_else(|| ProjectionError::EmptyProjection {
        domain: y.to_string(),
        side,
    })
}

/// Annular coefficient `d_Y(a, b)`. Values beyond `u64::MAX` saturate.
pub fn annular_distance(y: &AnnularDomain, a: &Slope, b: &Slope) -> Result<u64, ProjectionError> {
    let pa = project_side(y, a, 0)?;
    let pb = project_side(y, b, 1)?;
    Ok(class_distance(&pa, &pb))
}

/// `d_Y(b, T_core^n b)`; the twist band says this is within 5 of `|n|`.
pub fn twist_coefficient_check(y: &AnnularDomain, b: &Slope, n: i64) -> Result<u64, ProjectionError> {
    let moved = twist(y.core(), n).apply(b);
    annular_distance(y, b, &moved)
}

/// Pairwise disjoint annular domains. On a complexity-one surface distinct
/// curves always intersect, so at most one component is accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointDomains {
    components: Vec<AnnularDomain>,
}

impl DisjointDomains {
    pub fn new(components: Vec<AnnularDomain>) -> Result<Self, ProjectionError> {
        // distinct cores meet; equal cores would be the same domain twice
        if let [a, b, ..] = components.as_slice() {
            return Err(ProjectionError::NotDisjoint(a.to_string(), b.to_string()));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[AnnularDomain] {
        &self.components
    }
}

/// Sum of the annular coefficients over the components.
pub fn l1_distance(z: &DisjointDomains, a: &Slope, b: &Slope) -> Result<u64, ProjectionError> {
    let mut total = 0u64;
    for (i, y) in z.components.iter().enumerate() {
        let d = annular_distance(y, a, b).map_err(|_| ProjectionError::EmptyComponent {
            component: i,
            domain: y.to_string(),
        })?;
        total = total.saturating_add(d);
    }
    Ok(total)
}

/// Diameter in the annular curve graph of the union of the nonempty
/// projections of `slopes`; `None` if every projection is empty.
pub fn projection_diameter(slopes: &[Slope], y: &AnnularDomain) -> Option<u64> {
    let classes: Vec<ProjectionClass> = slopes.iter().filter_map(|s| annular_project(y, s)).collect();
    if classes.is_empty() {
        return None;
    }
    // the diameter is realized by the extreme normalized slopes
    let key = |c: &ProjectionClass| c.normalized_slope();
    let lo = classes.iter().min_by_key(|c| key(c)).expect("nonempty");
    let hi = classes.iter().max_by_key(|c| key(c)).expect("nonempty");
    Some(class_distance(lo, hi))
}

/// Bounded-geodesic-image diameter: `None` when some vertex of the path is
/// the core (the hypothesis fails), else the projection diameter.
pub fn bgim_diameter(
    path: &[Slope],
    y: &AnnularDomain,
    s: &SurfaceModel,
) -> Result<Option<u64>, ProjectionError> {
    if !is_geodesic(path, s) {
        return Err(ProjectionError::NotGeodesic);
    }
    if path.iter().any(|v| v == y.core()) {
        return Ok(None);
    }
    Ok(projection_diameter(path, y))
}

/// Projection diameter of a simplex or star; every member must project
/// nonemptily.
pub fn lipschitz_check(simplex: &[Slope], y: &AnnularDomain) -> Result<u64, ProjectionError> {
    if simplex.is_empty() {
        return Err(ProjectionError::EmptyInput);
    }
    for (i, s) in simplex.iter().enumerate() {
        project_side(y, s, i)?;
    }
    Ok(projection_diameter(simplex, y).expect("all members project"))
}
