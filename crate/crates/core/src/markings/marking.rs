use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::MarkingError;
use crate::farey::{geometric_intersection, MappingClass, Slope, SurfaceModel};
use crate::projection::{projection_diameter, AnnularDomain};

/// A filling set of slopes with pairwise intersection at most `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    slopes: Vec<Slope>,
    r: u64,
}

fn max_pairwise(slopes: &[Slope], s: &SurfaceModel) -> BigInt {
    let mut best = BigInt::zero();
    for (i, a) in slopes.iter().enumerate() {
        for b in &slopes[i + 1..] {
            best = best.max(geometric_intersection(a, b, s));
        }
    }
    best
}

/// Pairwise intersections at most `r` and the set fills (two distinct slopes
/// suffice in complexity one).
pub fn is_marking(slopes: &[Slope], r: u64, s: &SurfaceModel) -> bool {
    let mut sorted = slopes.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.len() >= 2 && max_pairwise(&sorted, s) <= BigInt::from(r)
}

impl Marking {
    pub fn new(mut slopes: Vec<Slope>, r: u64, s: &SurfaceModel) -> Result<Self, MarkingError> {
        slopes.sort();
        slopes.dedup();
        if !is_marking(&slopes, r, s) {
            let shown = Self { slopes, r };
            return Err(MarkingError::NotAMarking(shown.to_string()));
        }
        Ok(Self { slopes, r })
    }

    /// `{0/1, 1/0}` with the smallest admissible bound.
    pub fn base(s: &SurfaceModel) -> Self {
        Self {
            slopes: vec![Slope::zero(), Slope::infinity()],
            r: u64::from(s.intersection_multiplier()),
        }
    }

    pub(crate) fn from_sorted(slopes: Vec<Slope>, r: u64) -> Self {
        Self { slopes, r }
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn translate(&self, g: &MappingClass) -> Self {
        let mut slopes: Vec<Slope> = self.slopes.iter().map(|s| g.apply(s)).collect();
        slopes.sort();
        Self { slopes, r: self.r }
    }

    pub fn contains(&self, s: &Slope) -> bool {
        self.slopes.binary_search(s).is_ok()
    }

    /// Union with another marking, if it is a marking for bound `e`.
    pub fn union_within(&self, other: &Marking, e: u64, s: &SurfaceModel) -> Option<Marking> {
        let mut slopes = self.slopes.clone();
        slopes.extend(other.slopes.iter().cloned());
        slopes.sort();
        slopes.dedup();
        (max_pairwise(&slopes, s) <= BigInt::from(e)).then_some(Marking { slopes, r: e })
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.slopes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}} @{}", self.r)
    }
}

/// Parses `{p/q, p/q, ...} @R`; validity against a surface is checked by
/// [`Marking::new`], so the result here is only syntactic.
impl FromStr for Marking {
    type Err = MarkingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MarkingError::Parse(format!("expected {{p/q, ...}} @R, got {s:?}"));
        let (set, r) = s.split_once('@').ok_or_else(bad)?;
        let r: u64 = r.trim().parse().map_err(|_| bad())?;
        let inner = set.trim().strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(bad)?;
        let mut slopes = inner
            .split(',')
            .map(|t| t.trim().parse::<Slope>().map_err(|e| MarkingError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        slopes.sort();
        slopes.dedup();
        Ok(Self { slopes, r })
    }
}

/// All slopes `u` with `|det(u, a)| <= bound` and `|det(u, b)| <= bound`, for
/// distinct `a`, `b`; each pair of determinants pins `u` down by Cramer's rule.
pub fn slopes_within(a: &Slope, b: &Slope, bound: u64) -> Vec<Slope> {
    let delta = a.det(b);
    assert!(!delta.is_zero(), "slopes must be distinct");
    let bound = bound as i64;
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if x == 0 && y == 0 {
                continue;
            }
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            // det(u, a) = x, det(u, b) = y
            let up = a.p() * &y - b.p() * &x;
            let uq = a.q() * &y - b.q() * &x;
            if !(up.is_multiple_of(&delta) && uq.is_multiple_of(&delta)) {
                continue;
            }
            let (up, uq) = (up / &delta, uq / &delta);
            if up.is_zero() && uq.is_zero() {
                continue;
            }
            if up.gcd(&uq) != BigInt::from(1) {
                continue;
            }
            if let Ok(s) = Slope::new(up, uq) {
                out.push(s);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Diameter in the annular graph of `y` of the projections of the slopes of
/// `m` that cross the core.
pub fn marking_projection_diameter(m: &Marking, y: &AnnularDomain) -> Result<u64, MarkingError> {
    projection_diameter(m.slopes(), y).ok_or_else(|| MarkingError::EmptyProjection(m.to_string()))
}

pub(crate) fn det_bound(e: u64, s: &SurfaceModel) -> u64 {
    e / u64::from(s.intersection_multiplier())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    const T: SurfaceModel = SurfaceModel::TORUS;

    #[test]
    fn marking_examples() {
        assert!(is_marking(&[Slope::zero(), Slope::infinity()], 1, &T));
        assert!(!is_marking(&[Slope::zero()], 5, &T));
        assert!(!is_marking(&[Slope::zero(), Slope::int(2, 3)], 1, &T));
        assert!(!is_marking(&[Slope::zero(), Slope::infinity()], 1, &SurfaceModel::SPHERE));
    }

    #[test]
    fn text_roundtrip() {
        let m = Marking::new(vec![Slope::infinity(), Slope::zero(), Slope::int(1, 1)], 1, &T).unwrap();
        let text = m.to_string();
        assert_eq!(text, "{0/1, 1/0, 1/1} @1");
        assert_eq!(text.parse::<Marking>().unwrap(), m);
        assert!("{0/1 1/0}".parse::<Marking>().is_err());
    }

    #[test]
    fn cramer_enumeration_matches_brute_force() {
        let (a, b) = (Slope::int(2, 5), Slope::int(-1, 3));
        let bound = 4;
        let fast = slopes_within(&a, &b, bound);
        let mut brute = Vec::new();
        for p in -60i64..=60 {
            for q in 0i64..=60 {
                if num_integer::gcd(p, q) != 1 || (q == 0 && p != 1) {
                    continue;
                }
                let u = Slope::int(p, q);
                if u.det(&a).abs() <= BigInt::from(bound) && u.det(&b).abs() <= BigInt::from(bound) {
                    brute.push(u);
                }
            }
        }
        brute.sort();
        assert_eq!(fast, brute);
    }

    #[test]
    fn projection_diameter_examples() {
        let m = Marking::base(&T);
        let d = marking_projection_diameter(&m, &AnnularDomain::new(Slope::int(1, 1))).unwrap();
        assert!(d <= 8);
        let with_core = Marking::new(vec![Slope::zero(), Slope::infinity(), Slope::int(1, 1)], 1, &T).unwrap();
        let y = AnnularDomain::new(Slope::int(1, 1));
        assert_eq!(
            marking_projection_diameter(&with_core, &y).unwrap(),
            marking_projection_diameter(&m, &y).unwrap()
        );
    }
}
