//! Farey-graph distances.
//!
//! Every geodesic from `a` to `b` stays inside the *ladder*: the vertices of
//! the Farey triangles crossed by the hyperbolic line from `a` to `b`. A
//! vertex `u` outside the ladder is cut off from both ends by a single
//! ladder edge `{e, f}`, so a path through `u` enters and leaves through
//! `{e, f}` and can be shortened by at least one. The ladder is also
//! edge-complete: a Farey edge between two ladder vertices is a chord of a
//! triangulated ideal polygon that crosses no triangulation edge, so it is
//! one of them. Its vertices satisfy `i(u,a), i(u,b) <= i(a,b)`, which the
//! search enforces as a frontier filter.
//!
//! The oracle searches the whole Farey graph restricted to a coordinate box
//! containing the ladder and is used to cross-check in debug builds.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{geometric_intersection, MappingClass, Slope, SurfaceModel};
use crate::metric::{FiniteGraph, GraphMetric};

/// Explicit ladder between two slopes: vertices and Farey edges among them.
#[derive(Debug, Clone)]
pub struct Ladder {
    pub vertices: Vec<Slope>,
    pub edges: Vec<(usize, usize)>,
    /// Index of `a` (always 0) and of `b`.
    pub start: usize,
    pub end: usize,
}

impl Ladder {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Unimodular `g` with `g·a = 1/0`: rows `(x, y)` and `(-q, p)` where
/// `x p + y q = 1`.
fn normalizer(a: &Slope) -> MappingClass {
    let (u, v) = a.complement();
    MappingClass::new(-v, u, -a.q().clone(), a.p().clone())
        .expect("complement gives a unimodular matrix")
}

pub fn ladder(a: &Slope, b: &Slope) -> Ladder {
    if a == b {
        return Ladder {
            vertices: vec![a.clone()],
            edges: Vec::new(),
            start: 0,
            end: 0,
        };
    }
    let g = normalizer(a);
    debug_assert_eq!(g.apply(a), Slope::infinity());
    let target = g.apply(b);
    let (tp, tq) = (target.p().clone(), target.q().clone());
    let mut verts: Vec<(BigInt, BigInt)> = vec![(BigInt::one(), BigInt::zero())];
    let mut edges = Vec::new();
    let n = tp.div_floor(&tq);
    verts.push((n.clone(), BigInt::one()));
    edges.push((0, 1));
    let end;
    if tq.is_one() {
        end = 1;
    } else {
        verts.push((n + 1, BigInt::one()));
        edges.push((0, 2));
        edges.push((1, 2));
        let (mut l, mut r) = (1usize, 2usize);
        loop {
            let m = (&verts[l].0 + &verts[r].0, &verts[l].1 + &verts[r].1);
            let mi = verts.len();
            let hit = m.0 == tp && m.1 == tq;
            // target < mediant  <=>  tp * mq < mp * tq  (denominators positive)
            let below = &tp * &m.1 < &m.0 * &tq;
            verts.push(m);
            edges.push((l, mi));
            edges.push((r, mi));
            if hit {
                end = mi;
                break;
            }
            if below {
                r = mi;
            } else {
                l = mi;
            }
        }
    }
    let back = g.inverse();
    let vertices = verts
        .into_iter()
        .map(|(x, y)| {
            let (x, y) = back.apply_vector(&x, &y);
            Slope::from_vector(x, y)
        })
        .collect();
    Ladder {
        vertices,
        edges,
        start: 0,
        end,
    }
}

/// Ladder vertices only.
pub fn ladder_vertices(a: &Slope, b: &Slope) -> Vec<Slope> {
    ladder(a, b).vertices
}

fn within_bound(u: &Slope, a: &Slope, b: &Slope, bound: &BigInt) -> bool {
    u.det(a).abs() <= *bound && u.det(b).abs() <= *bound
}

/// Bidirectional layer-by-layer BFS on the ladder graph.
fn ladder_distance(a: &Slope, b: &Slope) -> u64 {
    if a == b {
        return 0;
    }
    let lad = ladder(a, b);
    let adj = lad.adjacency();
    let bound = a.det(b).abs();
    let keep: Vec<bool> = lad
        .vertices
        .iter()
        .map(|u| within_bound(u, a, b, &bound))
        .collect();
    let n = lad.vertices.len();
    let mut dist = [vec![u64::MAX; n], vec![u64::MAX; n]];
    let mut frontier = [vec![lad.start], vec![lad.end]];
    dist[0][lad.start] = 0;
    dist[1][lad.end] = 0;
    let mut best = u64::MAX;
    loop {
        // expand the smaller frontier by one full layer
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            break;
        }
        let mut next = Vec::new();
        for &u in &frontier[side] {
            for &v in &adj[u] {
                if !keep[v] || dist[side][v] != u64::MAX {
                    continue;
                }
                dist[side][v] = dist[side][u] + 1;
                if dist[1 - side][v] != u64::MAX {
                    best = best.min(dist[side][v] + dist[1 - side][v]);
                }
                next.push(v);
            }
        }
        frontier[side] = next;
        if best != u64::MAX {
            break;
        }
    }
    best
}

/// Curve-graph distance. In debug builds small inputs are cross-checked
/// against the unrestricted search; on disagreement the oracle value wins.
pub fn curve_distance(a: &Slope, b: &Slope, _s: &SurfaceModel) -> u64 {
    let fast = ladder_distance(a, b);
    if cfg!(debug_assertions) && small(a) && small(b) {
        let slow = curve_distance_oracle(a, b);
        if slow != fast {
            log::error!("pruned distance {fast} disagrees with oracle {slow} for {a}, {b}");
            return slow;
        }
    }
    fast
}

fn small(s: &Slope) -> bool {
    s.height() <= BigInt::from(12)
}

fn ladder_geodesic(a: &Slope, b: &Slope) -> Vec<Slope> {
    if a == b {
        return vec![a.clone()];
    }
    let lad = ladder(a, b);
    let adj = lad.adjacency();
    let n = lad.vertices.len();
    let mut to_b = vec![u64::MAX; n];
    to_b[lad.end] = 0;
    let mut queue = VecDeque::from([lad.end]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if to_b[v] == u64::MAX {
                to_b[v] = to_b[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![lad.start];
    let mut cur = lad.start;
    while cur != lad.end {
        cur = adj[cur]
            .iter()
            .copied()
            .filter(|&v| to_b[v] + 1 == to_b[cur])
            .min_by(|&x, &y| lad.vertices[x].cmp(&lad.vertices[y]))
            .expect("ladder is connected");
        path.push(cur);
    }
    path.into_iter().map(|i| lad.vertices[i].clone()).collect()
}

/// Deterministic geodesic: from `a`, always step to the smallest slope
/// (in `(p, q)` order) that is one closer to `b`.
pub fn curve_geodesic(a: &Slope, b: &Slope, _s: &SurfaceModel) -> Vec<Slope> {
    let fast = ladder_geodesic(a, b);
    if cfg!(debug_assertions) && small(a) && small(b) {
        let slow = curve_geodesic_oracle(a, b);
        if slow != fast {
            log::error!("pruned geodesic disagrees with oracle for {a}, {b}");
            return slow;
        }
    }
    fast
}

/// All canonical slopes with `|p|, |q| <= h`, with their Farey edges.
pub fn farey_box(h: i64) -> (Vec<Slope>, FiniteGraph) {
    let mut slopes = Vec::new();
    for q in 0..=h {
        for p in -h..=h {
            if num_integer::gcd(p, q) == 1 && (q > 0 || p == 1) {
                slopes.push((p, q));
            }
        }
    }
    slopes.sort_by(|x, y| Slope::int(x.0, x.1).cmp(&Slope::int(y.0, y.1)));
    let index: HashMap<(i64, i64), usize> =
        slopes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (i, &(p, q)) in slopes.iter().enumerate() {
        // neighbours are (x + n p, y + n q) with x q - y p = ±1
        let (x0, y0) = {
            let s = Slope::int(p, q);
            let (x, y) = s.complement();
            (x.to_i64().unwrap(), y.to_i64().unwrap())
        };
        let span = 2 * h + 2;
        for n in -span..=span {
            let (x, y) = (x0 + n * p, y0 + n * q);
            let canon = if y < 0 || (y == 0 && x < 0) { (-x, -y) } else { (x, y) };
            if let Some(&j) = index.get(&canon) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = FiniteGraph::from_edges(slopes.len(), edges).expect("Farey box is simple");
    (
        slopes.into_iter().map(|(p, q)| Slope::int(p, q)).collect(),
        graph,
    )
}

fn oracle_box(a: &Slope, b: &Slope) -> i64 {
    (a.height() + b.height())
        .to_i64()
        .expect("oracle only runs on small slopes")
        .max(1)
}

/// Plain BFS on the Farey graph restricted to a box that contains the ladder.
pub fn curve_distance_oracle(a: &Slope, b: &Slope) -> u64 {
    let (slopes, g) = farey_box(oracle_box(a, b));
    let ia = slopes.binary_search(a).expect("a in box");
    let ib = slopes.binary_search(b).expect("b in box");
    g.distance(&ia, &ib).expect("Farey box is connected")
}

pub fn curve_geodesic_oracle(a: &Slope, b: &Slope) -> Vec<Slope> {
    let (slopes, g) = farey_box(oracle_box(a, b));
    let ia = slopes.binary_search(a).expect("a in box");
    let ib = slopes.binary_search(b).expect("b in box");
    // indices are sorted by slope order, so the index-lexicographic geodesic
    // is the slope-lexicographic one
    g.geodesic(&ia, &ib)
        .expect("connected")
        .into_iter()
        .map(|i| slopes[i].clone())
        .collect()
}

/// The `2·reach + 1` Farey neighbours `v0 + n·s`, `|n| <= reach`, where
/// `det(v0, s) = 1`.
pub fn farey_neighbors(s: &Slope, reach: i64) -> Vec<Slope> {
    let (x, y) = s.complement();
    (-reach..=reach)
        .map(|n| {
            let n = BigInt::from(n);
            Slope::from_vector(&x + &n * s.p(), &y + &n * s.q())
        })
        .collect()
}

/// Ball of the given radius around `center` inside the box `|p|,|q| <= h`,
/// as an induced subgraph (distances are those of the truncated graph).
pub fn farey_ball(center: &Slope, radius: u64, h: i64) -> (Vec<Slope>, FiniteGraph) {
    let (slopes, g) = farey_box(h);
    let c = slopes.binary_search(center).expect("center inside box");
    let dist = g.bfs(c);
    let keep: BTreeMap<usize, usize> = (0..slopes.len())
        .filter(|&i| dist[i] <= radius)
        .enumerate()
        .map(|(new, old)| (old, new))
        .collect();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter_map(|(u, v)| Some((*keep.get(&u)?, *keep.get(&v)?)))
        .collect();
    let ball = FiniteGraph::from_edges(keep.len(), edges).expect("subgraph of a simple graph");
    (keep.keys().map(|&i| slopes[i].clone()).collect(), ball)
}

/// The Farey graph as a [`GraphMetric`] on slopes.
#[derive(Debug, Clone, Copy)]
pub struct CurveGraph {
    pub surface: SurfaceModel,
}

impl GraphMetric for CurveGraph {
    type Vertex = Slope;

    fn distance(&self, a: &Slope, b: &Slope) -> Option<u64> {
        Some(curve_distance(a, b, &self.surface))
    }

    fn geodesic(&self, a: &Slope, b: &Slope) -> Option<Vec<Slope>> {
        Some(curve_geodesic(a, b, &self.surface))
    }

    fn is_adjacent(&self, a: &Slope, b: &Slope) -> bool {
        a.det(b).abs().is_one()
    }
}

/// `true` when consecutive slopes are Farey-adjacent and the length equals
/// the distance between the endpoints.
pub fn is_geodesic(path: &[Slope], s: &SurfaceModel) -> bool {
    let Some((first, last)) = path.first().zip(path.last()) else {
        return false;
    };
    path.windows(2).all(|w| w[0].det(&w[1]).abs().is_one())
        && curve_distance(first, last, s) == (path.len() - 1) as u64
}

/// `2 log2(i) + 2`, the logarithmic distance bound for intersecting curves.
pub fn log_distance_bound(a: &Slope, b: &Slope, s: &SurfaceModel) -> Option<f64> {
    let i = geometric_intersection(a, b, s);
    if i.is_zero() {
        return None;
    }
    Some(2.0 * i.to_f64().unwrap_or(f64::MAX).log2() + 2.0)
}
