//! Explicit finite pieces of the flat-expanded complex and the coned-off
//! Cayley graph, used as BFS oracles for the closed-form distances.
//!
//! Lengths are doubled so every edge is a unit edge: a half-edge of the tree
//! between `g·v0` and the flat point `g ∈ gH_X` has length 1, a lattice edge
//! of a flat has length 2 and carries a midpoint vertex.

use std::collections::HashMap;

use num_rational::Rational64;

use super::{enumerate_words, Factor, FreeProdError, Presentation, Word};
use crate::metric::FiniteGraph;
use crate::TreeLength;

fn elements(p: &Presentation, max_syllables: usize, max_exp: i64) -> Result<Vec<Word>, FreeProdError> {
    if max_exp < 1 {
        return Err(FreeProdError::BadBound);
    }
    let mut out = vec![Word::identity()];
    out.extend(enumerate_words(p, max_syllables, max_exp));
    Ok(out)
}

fn unit_vectors(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| {
            let mut v = vec![0; rank];
            v[i] = 1;
            v
        })
        .collect()
}

/// Flat-expanded complex on all words with at most `max_syllables` syllables
/// and exponents within `max_exp`. Such a set contains the geodesic between
/// any two of its `V`-points.
#[derive(Debug, Clone)]
pub struct FlatComplex {
    elements: Vec<Word>,
    index: HashMap<Word, usize>,
    graph: FiniteGraph,
}

impl FlatComplex {
    pub fn build(p: &Presentation, max_syllables: usize, max_exp: i64) -> Result<Self, FreeProdError> {
        let elements = elements(p, max_syllables, max_exp)?;
        let index: HashMap<Word, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let n = elements.len();
        if n.saturating_mul(3 + p.rank(Factor::A) + p.rank(Factor::B)) > super::MAX_BALL_VERTICES {
            return Err(FreeProdError::ResourceCap(super::MAX_BALL_VERTICES));
        }
        // vertex 3i is g_i·v0, 3i+1 the point g_i of the A-flat, 3i+2 of the B-flat
        let mut edges = Vec::with_capacity(n * (2 + 2 * (p.rank(Factor::A) + p.rank(Factor::B))));
        let mut next = 3 * n;
        let gens = [(Factor::A, unit_vectors(p.rank(Factor::A))), (Factor::B, unit_vectors(p.rank(Factor::B)))];
        for (i, g) in elements.iter().enumerate() {
            edges.push((3 * i, 3 * i + 1));
            edges.push((3 * i, 3 * i + 2));
            for (side, units) in &gens {
                let offset = if *side == Factor::A { 1 } else { 2 };
                for u in units {
                    let h = g.mul(&Word::syllable(*side, u.clone()));
                    if let Some(&j) = index.get(&h) {
                        edges.push((3 * i + offset, next));
                        edges.push((next, 3 * j + offset));
                        next += 1;
                    }
                }
            }
        }
        let graph = FiniteGraph::from_edges(next, edges).map_err(|e| FreeProdError::Graph(e.to_string()))?;
        Ok(Self { elements, index, graph })
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn contains(&self, g: &Word) -> bool {
        self.index.contains_key(g)
    }

    fn locate(&self, g: &Word) -> Result<usize, FreeProdError> {
        self.index.get(g).copied().ok_or_else(|| FreeProdError::OutsideComplex(g.to_string()))
    }

    /// Distances from `g·v0` to every `h·v0`, in the order of [`Self::elements`].
    pub fn distances_from(&self, g: &Word) -> Result<Vec<Option<TreeLength>>, FreeProdError> {
        let dist = self.graph.bfs(3 * self.locate(g)?);
        Ok((0..self.elements.len())
            .map(|j| (dist[3 * j] != u64::MAX).then(|| Rational64::new(dist[3 * j] as i64, 2)))
            .collect())
    }

    pub fn distance(&self, g: &Word, h: &Word) -> Result<Option<TreeLength>, FreeProdError> {
        let j = self.locate(h)?;
        Ok(self.distances_from(g)?[j])
    }
}

/// Cayley graph of `H_A * H_B` on standard generators with every coset
/// `gH_X` coned off, restricted to a finite set of words. Cone edges have
/// length 1/2.
#[derive(Debug, Clone)]
pub struct ConedGraph {
    elements: Vec<Word>,
    index: HashMap<Word, usize>,
    graph: FiniteGraph,
}

impl ConedGraph {
    pub fn build(p: &Presentation, max_syllables: usize, max_exp: i64) -> Result<Self, FreeProdError> {
        let elements = elements(p, max_syllables, max_exp)?;
        let index: HashMap<Word, usize> = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let n = elements.len();
        let mut cones: HashMap<(Factor, Word), usize> = HashMap::new();
        let mut next = n;
        let mut edges = Vec::new();
        let gens = [(Factor::A, unit_vectors(p.rank(Factor::A))), (Factor::B, unit_vectors(p.rank(Factor::B)))];
        for (i, g) in elements.iter().enumerate() {
            for (side, units) in &gens {
                let cone = *cones.entry((*side, g.coset_rep(*side))).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                edges.push((i, cone));
                for u in units {
                    if let Some(&j) = index.get(&g.mul(&Word::syllable(*side, u.clone()))) {
                        edges.push((i, next));
                        edges.push((next, j));
                        next += 1;
                    }
                }
            }
        }
        let graph = FiniteGraph::from_edges(next, edges).map_err(|e| FreeProdError::Graph(e.to_string()))?;
        Ok(Self { elements, index, graph })
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    /// Distances from `g` to every element, in the order of [`Self::elements`].
    pub fn distances_from(&self, g: &Word) -> Result<Vec<Option<TreeLength>>, FreeProdError> {
        let i = self.index.get(g).ok_or_else(|| FreeProdError::OutsideComplex(g.to_string()))?;
        let dist = self.graph.bfs(*i);
        Ok(dist[..self.elements.len()]
            .iter()
            .map(|&d| (d != u64::MAX).then(|| Rational64::new(d as i64, 2)))
            .collect())
    }
}
