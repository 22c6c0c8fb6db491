use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::marking::det_bound;
use super::{Marking, MarkingError};
use crate::farey::{geometric_intersection, ladder_vertices, twist, MappingClass, Slope, SurfaceModel};
use crate::metric::FiniteGraph;

/// Bound on markings touched by one exploration.
pub const MAX_BALL_MARKINGS: usize = 2_000_000;

/// Vertex bound `r`, edge bound `e` and the generators used to move the base
/// marking around.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkingGraphConfig {
    pub surface: SurfaceModel,
    pub r: u64,
    pub e: u64,
    pub generators: Vec<MappingClass>,
}

impl MarkingGraphConfig {
    /// Twists about `0/1` and `1/0`, `r` the intersection of the base pair
    /// and `e` the least bound with `μ0 ∪ h·μ0` a marking for every generator.
    pub fn standard(surface: SurfaceModel) -> Self {
        let generators = vec![
            twist(&Slope::zero(), 1),
            twist(&Slope::zero(), -1),
            twist(&Slope::infinity(), 1),
            twist(&Slope::infinity(), -1),
        ];
        Self::with_generators(surface, generators)
    }

    pub fn with_generators(surface: SurfaceModel, generators: Vec<MappingClass>) -> Self {
        let base = Marking::base(&surface);
        let r = base.r();
        let mut e = r;
        for h in &generators {
            for a in base.slopes().iter().chain(base.translate(h).slopes()) {
                for b in base.slopes().iter().chain(base.translate(h).slopes()) {
                    let i: u64 = geometric_intersection(a, b, &surface).try_into().unwrap_or(u64::MAX);
                    e = e.max(i);
                }
            }
        }
        Self {
            surface,
            r,
            e,
            generators,
        }
    }

    pub fn base(&self) -> Marking {
        Marking::base(&self.surface)
    }

    pub fn validate(&self) -> Result<(), MarkingError> {
        if self.e < self.r || self.r == 0 {
            return Err(MarkingError::Config(format!("need 1 <= R <= E, got R={} E={}", self.r, self.e)));
        }
        let base = self.base();
        for h in &self.generators {
            if base.union_within(&base.translate(h), self.e, &self.surface).is_none() {
                return Err(MarkingError::Config(format!("base and its image under {h} are not E-adjacent")));
            }
        }
        Ok(())
    }

    fn check(&self, m: &Marking) -> Result<(), MarkingError> {
        if m.r() != self.r || !super::is_marking(m.slopes(), self.r, &self.surface) {
            return Err(MarkingError::NotAMarking(format!("{m} under R={}", self.r)));
        }
        Ok(())
    }

    /// Union is an `e`-marking; both arguments must be `r`-markings.
    pub fn adjacent(&self, m1: &Marking, m2: &Marking) -> Result<bool, MarkingError> {
        self.check(m1)?;
        self.check(m2)?;
        Ok(m1.union_within(m2, self.e, &self.surface).is_some())
    }

    /// Markings adjacent to `m`, excluding `m`, in sorted order.
    pub fn neighbors(&self, m: &Marking) -> Result<Vec<Marking>, MarkingError> {
        let s = &self.surface;
        let bound = BigInt::from(self.e);
        let slopes = m.slopes();
        let mut pool: Vec<Slope> = super::slopes_within(&slopes[0], &slopes[1], det_bound(self.e, s))
            .into_iter()
            .filter(|u| slopes.iter().all(|v| geometric_intersection(u, v, s) <= bound))
            .collect();
        pool.extend(slopes.iter().cloned());
        pool.sort();
        pool.dedup();
        if pool.len() > 64 {
            return Err(MarkingError::ResourceCap(pool.len()));
        }
        let r = BigInt::from(self.r);
        let ok: Vec<Vec<bool>> = pool
            .iter()
            .map(|a| pool.iter().map(|b| a == b || geometric_intersection(a, b, s) <= r).collect())
            .collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        cliques(&ok, 0, &mut current, &mut out, MAX_BALL_MARKINGS)?;
        let mut found: Vec<Marking> = out
            .into_iter()
            .filter(|c| c.len() >= 2)
            .map(|c| Marking::from_sorted(c.into_iter().map(|i| pool[i].clone()).collect(), self.r))
            .filter(|x| x != m)
            .collect();
        found.sort();
        Ok(found)
    }

    /// Slope set the BFS may stay inside without changing distances, when
    /// one is known. With `R = E` equal to the minimal intersection,
    /// markings are Farey edges and triangles, adjacency means sharing a
    /// triangle, and geodesics follow the triangles crossed between the two
    /// markings.
    fn corridor(&self, m1: &Marking, m2: &Marking) -> Option<HashSet<Slope>> {
        let m = u64::from(self.surface.intersection_multiplier());
        if self.r != m || self.e != m {
            return None;
        }
        let mut allowed: HashSet<Slope> = HashSet::new();
        for a in m1.slopes() {
            for b in m2.slopes() {
                allowed.extend(ladder_vertices(a, b));
            }
        }
        allowed.extend(m1.slopes().iter().cloned());
        allowed.extend(m2.slopes().iter().cloned());
        Some(allowed)
    }
}

fn cliques(
    ok: &[Vec<bool>],
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<(), MarkingError> {
    for i in start..ok.len() {
        if current.iter().all(|&j| ok[i][j]) {
            current.push(i);
            out.push(current.clone());
            if out.len() > cap {
                return Err(MarkingError::ResourceCap(cap));
            }
            cliques(ok, i + 1, current, out, cap)?;
            current.pop();
        }
    }
    Ok(())
}

/// BFS distance, or `None` when `m2` is not reached within `radius_cap`.
/// Pruned to the triangle corridor when that is exact (see the tests), and
/// plain otherwise.
pub fn marking_distance(
    m1: &Marking,
    m2: &Marking,
    cfg: &MarkingGraphConfig,
    radius_cap: u64,
) -> Result<Option<u64>, MarkingError> {
    marking_distance_with(m1, m2, cfg, radius_cap, true)
}

/// Plain BFS with no corridor, the reference for [`marking_distance`].
pub fn marking_distance_unpruned(
    m1: &Marking,
    m2: &Marking,
    cfg: &MarkingGraphConfig,
    radius_cap: u64,
) -> Result<Option<u64>, MarkingError> {
    marking_distance_with(m1, m2, cfg, radius_cap, false)
}

pub(crate) fn marking_distance_with(
    m1: &Marking,
    m2: &Marking,
    cfg: &MarkingGraphConfig,
    radius_cap: u64,
    prune: bool,
) -> Result<Option<u64>, MarkingError> {
    cfg.check(m1)?;
    cfg.check(m2)?;
    if m1 == m2 {
        return Ok(Some(0));
    }
    let corridor = if prune { cfg.corridor(m1, m2) } else { None };
    let inside = |m: &Marking| corridor.as_ref().map_or(true, |c| m.slopes().iter().all(|s| c.contains(s)));
    let mut seen: HashSet<Marking> = HashSet::from([m1.clone()]);
    let mut frontier = vec![m1.clone()];
    for depth in 1..=radius_cap {
        let expanded: Vec<Vec<Marking>> = frontier
            .par_iter()
            .map(|m| cfg.neighbors(m))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for n in expanded.into_iter().flatten() {
            if !inside(&n) || seen.contains(&n) {
                continue;
            }
            if &n == m2 {
                return Ok(Some(depth));
            }
            seen.insert(n.clone());
            next.push(n);
        }
        if seen.len() > MAX_BALL_MARKINGS {
            return Err(MarkingError::ResourceCap(MAX_BALL_MARKINGS));
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

/// Explicit ball in the marking graph, vertices in BFS discovery order.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkingBall {
    pub center: Marking,
    pub radius: u64,
    pub markings: Vec<Marking>,
    pub depth: Vec<u64>,
    pub graph: FiniteGraph,
}

impl MarkingBall {
    pub fn build(cfg: &MarkingGraphConfig, center: &Marking, radius: u64) -> Result<Self, MarkingError> {
        cfg.check(center)?;
        let mut index: HashMap<Marking, usize> = HashMap::from([(center.clone(), 0)]);
        let mut markings = vec![center.clone()];
        let mut depth = vec![0u64];
        let mut adjacency: Vec<Vec<Marking>> = Vec::new();
        let mut layer = vec![0usize];
        let mut queue = VecDeque::new();
        for d in 0..=radius {
            let expanded: Vec<Vec<Marking>> = layer
                .par_iter()
                .map(|&i| cfg.neighbors(&markings[i]))
                .collect::<Result<_, _>>()?;
            for (&i, ns) in layer.iter().zip(expanded) {
                if adjacency.len() <= i {
                    adjacency.resize(i + 1, Vec::new());
                }
                if d < radius {
                    for n in &ns {
                        if !index.contains_key(n) {
                            index.insert(n.clone(), markings.len());
                            markings.push(n.clone());
                            depth.push(d + 1);
                            queue.push_back(markings.len() - 1);
                        }
                    }
                }
                adjacency[i] = ns;
            }
            if markings.len() > MAX_BALL_MARKINGS {
                return Err(MarkingError::ResourceCap(MAX_BALL_MARKINGS));
            }
            layer = queue.drain(..).collect();
        }
        let mut edges = BTreeSet::new();
        for (i, ns) in adjacency.iter().enumerate() {
            for n in ns {
                if let Some(&j) = index.get(n) {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
        let graph = FiniteGraph::from_edges(markings.len(), edges)
            .map_err(|e| MarkingError::Config(e.to_string()))?;
        Ok(Self {
            center: center.clone(),
            radius,
            markings,
            depth,
            graph,
        })
    }

    /// Cached build: reads the ball from `dir` when present and valid,
    /// otherwise builds and stores it.
    pub fn load_or_build(
        cfg: &MarkingGraphConfig,
        center: &Marking,
        radius: u64,
        dir: Option<&Path>,
    ) -> Result<Self, MarkingError> {
        let Some(dir) = dir else {
            return Self::build(cfg, center, radius);
        };
        let key = super::ball_cache_key(cfg, center, radius);
        match super::load_ball(dir, &key) {
            Ok(Some(ball)) if ball.center == *center && ball.radius == radius => return Ok(ball),
            Ok(_) => {}
            Err(e) => log::warn!("ignoring unreadable ball cache {key}: {e}"),
        }
        let ball = Self::build(cfg, center, radius)?;
        super::store_ball(dir, &key, &ball)?;
        Ok(ball)
    }

    pub fn index_of(&self, m: &Marking) -> Option<usize> {
        self.markings.iter().position(|x| x == m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn torus() -> MarkingGraphConfig {
        MarkingGraphConfig::standard(SurfaceModel::TORUS)
    }

    #[test]
    fn standard_config() {
        let t = torus();
        assert_eq!((t.r, t.e), (1, 1));
        t.validate().unwrap();
        let s = MarkingGraphConfig::standard(SurfaceModel::SPHERE);
        assert_eq!((s.r, s.e), (2, 2));
        s.validate().unwrap();
    }

    #[test]
    fn adjacency_examples() {
        let cfg = torus();
        let m0 = cfg.base();
        assert!(cfg.adjacent(&m0, &m0).unwrap());
        for h in &cfg.generators {
            assert!(cfg.adjacent(&m0, &m0.translate(h)).unwrap());
        }
        let far = m0.translate(&twist(&Slope::infinity(), 20));
        assert!(!cfg.adjacent(&m0, &far).unwrap());
        let bad = Marking::from_sorted(vec![Slope::zero(), Slope::int(2, 3)], 1);
        assert!(cfg.adjacent(&m0, &bad).is_err());
    }

    #[test]
    fn base_neighbors() {
        let cfg = torus();
        let ns = cfg.neighbors(&cfg.base()).unwrap();
        // the two triangles on {0/1, 1/0} and their four other edges
        assert_eq!(ns.len(), 6);
        for n in &ns {
            assert!(cfg.adjacent(&cfg.base(), n).unwrap());
        }
    }

    #[test]
    fn distance_examples() {
        let cfg = torus();
        let m0 = cfg.base();
        assert_eq!(marking_distance(&m0, &m0, &cfg, 5).unwrap(), Some(0));
        let h1 = &cfg.generators[0];
        let h2 = &cfg.generators[2];
        assert_eq!(marking_distance(&m0, &m0.translate(h1), &cfg, 5).unwrap(), Some(1));
        let two = marking_distance(&m0, &m0.translate(&(h1 * h2)), &cfg, 5).unwrap().unwrap();
        assert!(two <= 2);
        let far = m0.translate(&twist(&Slope::infinity(), 20));
        assert_eq!(marking_distance(&m0, &far, &cfg, 2).unwrap(), None);
    }

    #[test]
    fn corridor_pruning_is_exact_on_a_ball() {
        let cfg = torus();
        let ball = MarkingBall::build(&cfg, &cfg.base(), 4).unwrap();
        let dist = ball.graph.bfs(0);
        for (i, m) in ball.markings.iter().enumerate() {
            assert_eq!(ball.depth[i], dist[i]);
            let pruned = marking_distance_with(&cfg.base(), m, &cfg, 10, true).unwrap();
            assert_eq!(pruned, Some(dist[i]), "{m}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let a = &ball.markings[rng.gen_range(0..ball.markings.len())];
            let b = &ball.markings[rng.gen_range(0..ball.markings.len())];
            let pruned = marking_distance_with(a, b, &cfg, 12, true).unwrap();
            let plain = marking_distance_with(a, b, &cfg, 12, false).unwrap();
            assert_eq!(pruned, plain, "{a} {b}");
        }
    }

    #[test]
    fn sphere_pruning_matches() {
        let cfg = MarkingGraphConfig::standard(SurfaceModel::SPHERE);
        let ball = MarkingBall::build(&cfg, &cfg.base(), 3).unwrap();
        let dist = ball.graph.bfs(0);
        for (i, m) in ball.markings.iter().enumerate().step_by(3) {
            assert_eq!(marking_distance(&cfg.base(), m, &cfg, 10).unwrap(), Some(dist[i]));
        }
    }

    #[test]
    fn equivariance() {
        let cfg = torus();
        let m0 = cfg.base();
        let target = m0.translate(&(&cfg.generators[0] * &cfg.generators[2].pow(3)));
        let d = marking_distance(&m0, &target, &cfg, 20).unwrap();
        let g = &cfg.generators[1] * &cfg.generators[3];
        assert_eq!(marking_distance(&m0.translate(&g), &target.translate(&g), &cfg, 20).unwrap(), d);
    }
}
