use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;

use super::LabError;
use crate::farey::{curve_distance, curve_geodesic, twist, MappingClass, Slope, SurfaceModel};
use crate::freeprod::{Factor, PointKind, Presentation, ScaledPoint, Syllable, TreePoint, Word};
use crate::markings::Marking;

/// Two cyclic twist groups `<t_α^pa>` and `<t_β^pb>` on a complexity-one
/// surface, with the fixed geodesic from `α` to `β`.
#[derive(Debug)]
pub struct RealizedGroup {
    surface: SurfaceModel,
    alpha: Slope,
    beta: Slope,
    power_a: i64,
    power_b: i64,
    geodesic: Vec<Slope>,
    cache: Mutex<HashMap<Word, MappingClass>>,
}

impl Clone for RealizedGroup {
    fn clone(&self) -> Self {
        Self {
            surface: self.surface,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            power_a: self.power_a,
            power_b: self.power_b,
            geodesic: self.geodesic.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

/// `β` with `d(1/0, β) = D`: ratios of consecutive Pell numbers, whose
/// continued fractions `[0; 2, 2, ...]` cross one fan per step.
pub fn pell_slope(d: u32) -> Slope {
    let (mut p, mut q) = (0i64, 1i64);
    for _ in 1..d {
        (p, q) = (q, 2 * q + p);
    }
    Slope::int(p, q)
}

impl RealizedGroup {
    pub fn new(surface: SurfaceModel, alpha: Slope, beta: Slope, power_a: i64, power_b: i64) -> Result<Self, LabError> {
        if alpha == beta {
            return Err(LabError::Config("the two curves must differ".into()));
        }
        if power_a == 0 || power_b == 0 {
            return Err(LabError::Config("twist powers must be nonzero".into()));
        }
        let geodesic = curve_geodesic(&alpha, &beta, &surface);
        Ok(Self {
            surface,
            alpha,
            beta,
            power_a,
            power_b,
            geodesic,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// `α = 1/0` and the Pell slope at distance `d`, twist powers 1.
    pub fn pell(surface: SurfaceModel, d: u32) -> Result<Self, LabError> {
        Self::new(surface, Slope::infinity(), pell_slope(d), 1, 1)
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn alpha(&self) -> &Slope {
        &self.alpha
    }

    pub fn beta(&self) -> &Slope {
        &self.beta
    }

    pub fn powers(&self) -> (i64, i64) {
        (self.power_a, self.power_b)
    }

    /// Curve-graph distance between the two curves.
    pub fn d(&self) -> u64 {
        (self.geodesic.len() - 1) as u64
    }

    pub fn geodesic(&self) -> &[Slope] {
        &self.geodesic
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::cyclic()
    }

    pub fn curve(&self, f: Factor) -> &Slope {
        match f {
            Factor::A => &self.alpha,
            Factor::B => &self.beta,
        }
    }

    fn syllable_class(&self, s: &Syllable) -> Result<MappingClass, LabError> {
        let [e] = s.exps[..] else {
            return Err(LabError::UnsupportedRank(s.exps.len()));
        };
        let power = match s.factor {
            Factor::A => self.power_a,
            Factor::B => self.power_b,
        };
        Ok(twist(self.curve(s.factor), e * power))
    }

    /// The homomorphism to the mapping class group, one twist per syllable.
    pub fn realize(&self, w: &Word) -> Result<MappingClass, LabError> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(w) {
            return Ok(m.clone());
        }
        let mut m = MappingClass::identity();
        for s in w.syllables() {
            m = &m * &self.syllable_class(s)?;
        }
        let mut cache = self.cache.lock().expect("cache lock");
        if cache.len() < 200_000 {
            cache.insert(w.clone(), m.clone());
        }
        Ok(m)
    }

    /// Index of the geodesic vertex standing in for the edge midpoint; the
    /// midpoint is moved down to a vertex when `D` is odd.
    pub fn midpoint_index(&self) -> usize {
        (self.geodesic.len() - 1) / 2
    }

    /// The equivariant map from the tree to curves.
    pub fn phi(&self, p: &TreePoint) -> Result<Slope, LabError> {
        let g = self.realize(p.coset_word())?;
        let local = match p.kind() {
            PointKind::W(f) => self.curve(f).clone(),
            PointKind::V => self.geodesic[self.midpoint_index()].clone(),
        };
        Ok(g.apply(&local))
    }

    /// The same map on the scaled tree `T_D`, `D` the curve distance.
    pub fn phi_scaled(&self, p: &ScaledPoint) -> Result<Slope, LabError> {
        let j = p.position() as usize;
        if j >= self.geodesic.len() {
            return Err(LabError::Config(format!("position {j} beyond scale {}", self.d())));
        }
        Ok(self.realize(p.edge())?.apply(&self.geodesic[j]))
    }

    /// The base marking: the midpoint curve and the next geodesic vertex.
    pub fn base_marking(&self) -> Marking {
        let i = self.midpoint_index();
        let slopes = vec![self.geodesic[i].clone(), self.geodesic[i + 1].clone()];
        Marking::new(slopes, u64::from(self.surface.intersection_multiplier()), &self.surface)
            .expect("adjacent geodesic vertices form a marking")
    }

    /// `μ(g·v0) = Φ(g)·μ`.
    pub fn orbit_marking(&self, g: &Word) -> Result<Marking, LabError> {
        Ok(self.base_marking().translate(&self.realize(g)?))
    }

    /// Curve distance used throughout; exposed so experiments share one path.
    pub fn distance(&self, a: &Slope, b: &Slope) -> u64 {
        curve_distance(a, b, &self.surface)
    }
}

/// Normal-form word with a uniform syllable count in `1..=max_syllables`,
/// a random starting factor and nonzero exponents in `[-max_exp, max_exp]`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, p: &Presentation, max_syllables: usize, max_exp: i64) -> Word {
    let len = rng.gen_range(1..=max_syllables);
    let mut factor = if rng.gen_bool(0.5) { Factor::A } else { Factor::B };
    let mut syllables = Vec::with_capacity(len);
    for _ in 0..len {
        let exps = loop {
            let v: Vec<i64> = (0..p.rank(factor)).map(|_| rng.gen_range(-max_exp..=max_exp)).collect();
            if v.iter().any(|&e| e != 0) {
                break v;
            }
        };
        syllables.push(Syllable::new(factor, exps));
        factor = factor.other();
    }
    crate::freeprod::normal_form(syllables)
}
