//! The Bass–Serre tree `T` of `H_A * H_B` and its scaled copies `T_D`.
//!
//! Edges of `T` are group elements: edge `g` joins the coset vertices
//! `gH_A` and `gH_B`, and its midpoint is the `V`-point `g·v0`. Points on
//! edge `g` are written `(g, t)` with `t ∈ [-1/2, 1/2]`, `-1/2` at the
//! `A` end. Walking from edge `g1` to edge `g2` crosses one coset vertex per
//! syllable of `g1⁻¹g2`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::Signed;

use super::word::nonzero_vectors;
use super::{Factor, FreeProdError, Presentation, Syllable, Word};
use crate::metric::{check_comparable, truncate, ComparabilityBound, FiniteGraph};
use crate::TreeLength;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    /// Collapsed flat `gH_X`.
    W(Factor),
    /// Edge midpoint `g·v0`.
    V,
}

/// A vertex or edge midpoint of `T`, with the shortest coset representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePoint {
    kind: PointKind,
    coset: Word,
}

impl TreePoint {
    pub fn v(g: Word) -> Self {
        Self {
            kind: PointKind::V,
            coset: g,
        }
    }

    pub fn v0() -> Self {
        Self::v(Word::identity())
    }

    /// The coset vertex `gH_side`.
    pub fn w(side: Factor, g: &Word) -> Self {
        Self {
            kind: PointKind::W(side),
            coset: g.coset_rep(side),
        }
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn coset_word(&self) -> &Word {
        &self.coset
    }

    pub fn is_v(&self) -> bool {
        self.kind == PointKind::V
    }

    /// Left translation by `g`.
    pub fn translate(&self, g: &Word) -> Self {
        let moved = g.mul(&self.coset);
        match self.kind {
            PointKind::V => Self::v(moved),
            PointKind::W(side) => Self::w(side, &moved),
        }
    }

    fn offset(&self) -> Rational64 {
        match self.kind {
            PointKind::V => Rational64::from_integer(0),
            PointKind::W(Factor::A) => Rational64::new(-1, 2),
            PointKind::W(Factor::B) => Rational64::new(1, 2),
        }
    }
}

impl fmt::Display for TreePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PointKind::V => write!(f, "v[{}]", self.coset),
            PointKind::W(side) => write!(f, "{}[{}]", side.to_string().to_lowercase(), self.coset),
        }
    }
}

fn end_offset(side: Factor, half: Rational64) -> Rational64 {
    match side {
        Factor::A => -half,
        Factor::B => half,
    }
}

/// Distance between points `(g1, t1)` and `(g2, t2)` on edges of a tree whose
/// edges have length `2·half`.
fn edge_point_distance(g1: &Word, t1: Rational64, g2: &Word, t2: Rational64, half: Rational64) -> Rational64 {
    let h = g1.left_divide(g2);
    let k = h.syllable_count() as i64;
    if k == 0 {
        return (t1 - t2).abs();
    }
    let exit = end_offset(h.first_factor().expect("nonempty"), half);
    let entry = end_offset(h.last_factor().expect("nonempty"), half);
    (t1 - exit).abs() + half * 2 * (k - 1) + (t2 - entry).abs()
}

/// Exact distance in `T` (unit edges, `V`-points at midpoints).
pub fn tree_distance(p1: &TreePoint, p2: &TreePoint) -> TreeLength {
    edge_point_distance(&p1.coset, p1.offset(), &p2.coset, p2.offset(), Rational64::new(1, 2))
}

fn require_v(p: &TreePoint) -> Result<(), FreeProdError> {
    if p.is_v() {
        Ok(())
    } else {
        Err(FreeProdError::NotAVPoint(p.to_string()))
    }
}

/// Lattice coordinate of the closest point of the flat `gH_X` to `g_i·v0`:
/// the leading `X`-syllable of `g⁻¹g_i`, or the origin.
fn flat_coordinate(flat: &TreePoint, g: &Word, rank: usize) -> Vec<i64> {
    let u = flat.coset.left_divide(g);
    match (flat.kind, u.syllables().first()) {
        (PointKind::W(side), Some(s)) if s.factor == side => s.exps.clone(),
        _ => vec![0; rank],
    }
}

/// L¹ length of the stretch of the geodesic from `p1` to `p2` inside the flat
/// of `w_vertex`; 0 when the geodesic misses that flat.
pub fn flat_term(w_vertex: &TreePoint, p1: &TreePoint, p2: &TreePoint) -> Result<u64, FreeProdError> {
    if w_vertex.is_v() {
        return Err(FreeProdError::NotAWVertex(w_vertex.to_string()));
    }
    require_v(p1)?;
    require_v(p2)?;
    let rank = flat_rank(w_vertex, p1, p2);
    let x1 = flat_coordinate(w_vertex, &p1.coset, rank);
    let x2 = flat_coordinate(w_vertex, &p2.coset, rank);
    Ok(x1.iter().zip(&x2).map(|(a, b)| (a - b).unsigned_abs()).sum())
}

// rank of the flat, read off any syllable of the right factor in sight
fn flat_rank(w: &TreePoint, p1: &TreePoint, p2: &TreePoint) -> usize {
    let PointKind::W(side) = w.kind else { return 0 };
    [&w.coset, &p1.coset, &p2.coset]
        .iter()
        .flat_map(|x| x.syllables())
        .find(|s| s.factor == side)
        .map(|s| s.exps.len())
        .unwrap_or(1)
}

/// Coset vertices crossed by the tree geodesic between two `V`-points.
pub fn w_vertices_between(p1: &TreePoint, p2: &TreePoint) -> Result<Vec<TreePoint>, FreeProdError> {
    require_v(p1)?;
    require_v(p2)?;
    let h = p1.coset.left_divide(&p2.coset);
    let mut prefix = p1.coset.clone();
    let mut out = Vec::with_capacity(h.syllable_count());
    for s in h.syllables() {
        out.push(TreePoint::w(s.factor, &prefix));
        prefix = prefix.mul(&Word::syllable(s.factor, s.exps.clone()));
    }
    Ok(out)
}

/// The two sides of the flat-complex distance: the tree term and the flat
/// terms along the geodesic.
pub fn distance_terms(p1: &TreePoint, p2: &TreePoint) -> Result<(TreeLength, Vec<u64>), FreeProdError> {
    require_v(p1)?;
    require_v(p2)?;
    // the i-th flat crossed is entered at the origin and left at the i-th
    // syllable of g1⁻¹g2, so its term is that syllable's L¹ norm
    let h = p1.coset.left_divide(&p2.coset);
    let terms = h.syllables().iter().map(Syllable::l1).collect();
    Ok((Rational64::from_integer(h.syllable_count() as i64), terms))
}

/// `d_T + Σ_w d_w` for `V`-points.
pub fn total_distance(p1: &TreePoint, p2: &TreePoint) -> Result<TreeLength, FreeProdError> {
    let (dt, terms) = distance_terms(p1, p2)?;
    Ok(dt + Rational64::from_integer(terms.iter().sum::<u64>() as i64))
}

/// Truncated sum `[d_T]_κ + Σ[d_w]_κ` is `(κ+1, κ²+2κ)`-comparable with the
/// full sum; errors only on `κ <= 0` or non-`V` points.
pub fn check_truncation_comparability(
    p1: &TreePoint,
    p2: &TreePoint,
    kappa: TreeLength,
) -> Result<bool, FreeProdError> {
    if kappa <= Rational64::from_integer(0) {
        return Err(FreeProdError::NonPositiveKappa(kappa.to_string()));
    }
    let (dt, terms) = distance_terms(p1, p2)?;
    let full = dt + Rational64::from_integer(terms.iter().sum::<u64>() as i64);
    let mut truncated = truncate(dt, kappa).expect("nonnegative");
    for t in terms {
        truncated += truncate(Rational64::from_integer(t as i64), kappa).expect("nonnegative");
    }
    let bound = ComparabilityBound::new(kappa + 1, kappa * kappa + kappa * 2).expect("valid constants");
    Ok(check_comparable(&truncated, &full, &bound).expect("nonnegative"))
}

/// Distance in the coned-off Cayley graph: one unit per syllable of
/// `g1⁻¹g2` (half an edge into the cone point and half out).
pub fn coned_distance(g1: &Word, g2: &Word) -> u64 {
    g1.left_divide(g2).syllable_count() as u64
}

/// Labeled finite piece of a tree; `graph` vertex `i` is `labels[i]`.
#[derive(Debug, Clone)]
pub struct LabeledGraph<L> {
    pub labels: Vec<L>,
    pub graph: FiniteGraph,
}

impl<L: Clone + Eq + std::hash::Hash> LabeledGraph<L> {
    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_map(&self) -> HashMap<L, usize> {
        self.labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect()
    }
}

/// Resource cap for explicit balls.
pub const MAX_BALL_VERTICES: usize = 4_000_000;

/// Ball of `T` around `v0` of the given radius in half-edge hops, keeping
/// syllable exponents within `max_exp`. Graph edges are half-edges.
pub fn build_tree(
    p: &Presentation,
    radius: usize,
    max_exp: i64,
) -> Result<LabeledGraph<TreePoint>, FreeProdError> {
    if radius == 0 || max_exp < 1 {
        return Err(FreeProdError::BadBound);
    }
    let vecs = [nonzero_vectors(p.rank(Factor::A), max_exp), nonzero_vectors(p.rank(Factor::B), max_exp)];
    let mut index: HashMap<TreePoint, usize> = HashMap::new();
    let mut labels = vec![TreePoint::v0()];
    index.insert(TreePoint::v0(), 0);
    let mut depth = vec![0usize];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if depth[u] == radius {
            continue;
        }
        let here = labels[u].clone();
        let neighbors: Vec<TreePoint> = match here.kind {
            PointKind::V => vec![TreePoint::w(Factor::A, &here.coset), TreePoint::w(Factor::B, &here.coset)],
            PointKind::W(side) => {
                let i = if side == Factor::A { 0 } else { 1 };
                std::iter::once(here.coset.clone())
                    .chain(vecs[i].iter().map(|v| here.coset.mul(&Word::syllable(side, v.clone()))))
                    .map(TreePoint::v)
                    .collect()
            }
        };
        for n in neighbors {
            if index.contains_key(&n) {
                continue;
            }
            if labels.len() >= MAX_BALL_VERTICES {
                return Err(FreeProdError::ResourceCap(MAX_BALL_VERTICES));
            }
            let id = labels.len();
            index.insert(n.clone(), id);
            labels.push(n);
            depth.push(depth[u] + 1);
            edges.push((u, id));
            queue.push_back(id);
        }
    }
    let graph = FiniteGraph::from_edges(labels.len(), edges).map_err(|e| FreeProdError::Graph(e.to_string()))?;
    Ok(LabeledGraph { labels, graph })
}

/// A point of `T_D`: edge `g` and integer position `0..=D` from its `A` end.
/// End positions are identified with the coset vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPoint {
    edge: Word,
    position: u64,
}

impl ScaledPoint {
    pub fn new(edge: &Word, position: u64, d: u64) -> Result<Self, FreeProdError> {
        if position > d || d == 0 {
            return Err(FreeProdError::BadBound);
        }
        let edge = if position == 0 {
            edge.coset_rep(Factor::A)
        } else if position == d {
            edge.coset_rep(Factor::B)
        } else {
            edge.clone()
        };
        Ok(Self { edge, position })
    }

    pub fn edge(&self) -> &Word {
        &self.edge
    }

    pub fn position(&self) -> u64 {
        self.position
    }

    pub fn translate(&self, g: &Word, d: u64) -> Self {
        Self::new(&g.mul(&self.edge), self.position, d).expect("position unchanged")
    }

    /// The `V`-point on this edge when it is a `T_D` vertex (`D` even).
    pub fn from_tree_point(p: &TreePoint, d: u64) -> Option<Self> {
        let position = match p.kind {
            PointKind::W(Factor::A) => 0,
            PointKind::W(Factor::B) => d,
            PointKind::V if d % 2 == 0 => d / 2,
            PointKind::V => return None,
        };
        Self::new(&p.coset, position, d).ok()
    }
}

impl fmt::Display for ScaledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]@{}", self.edge, self.position)
    }
}

/// Exact distance in `T_D`.
pub fn scaled_distance(x: &ScaledPoint, y: &ScaledPoint, d: u64) -> u64 {
    let half = Rational64::new(d as i64, 2);
    let t = |p: &ScaledPoint| Rational64::from_integer(p.position as i64) - half;
    let r = edge_point_distance(&x.edge, t(x), &y.edge, t(y), half);
    debug_assert!(r.is_integer());
    r.to_integer() as u64
}

/// `T_D` restricted to the edges `g` with at most `max_syllables` syllables
/// and exponents within `max_exp`, each subdivided into `D` unit segments.
pub fn build_scaled_tree(
    p: &Presentation,
    max_syllables: usize,
    d: u64,
    max_exp: i64,
) -> Result<LabeledGraph<ScaledPoint>, FreeProdError> {
    if d == 0 || max_exp < 1 {
        return Err(FreeProdError::BadBound);
    }
    let mut elements = vec![Word::identity()];
    elements.extend(super::enumerate_words(p, max_syllables, max_exp));
    let per_edge = d as usize + 1;
    if elements.len().saturating_mul(per_edge) > MAX_BALL_VERTICES {
        return Err(FreeProdError::ResourceCap(MAX_BALL_VERTICES));
    }
    let mut index: HashMap<ScaledPoint, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut id = |pt: ScaledPoint, labels: &mut Vec<ScaledPoint>| -> usize {
        *index.entry(pt.clone()).or_insert_with(|| {
            labels.push(pt);
            labels.len() - 1
        })
    };
    for g in &elements {
        let mut prev = id(ScaledPoint::new(g, 0, d)?, &mut labels);
        for pos in 1..=d {
            let cur = id(ScaledPoint::new(g, pos, d)?, &mut labels);
            edges.push((prev, cur));
            prev = cur;
        }
    }
    let graph = FiniteGraph::from_edges(labels.len(), edges).map_err(|e| FreeProdError::Graph(e.to_string()))?;
    Ok(LabeledGraph { labels, graph })
}
