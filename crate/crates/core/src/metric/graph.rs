use std::collections::{BTreeSet, VecDeque};

use super::MetricError;

/// Graph with a notion of distance and a deterministic choice of geodesic.
///
/// Implemented by explicit [`FiniteGraph`]s and by the Farey graph, so the
/// quasigeodesic checkers run against either.
pub trait GraphMetric {
    type Vertex: Clone + Ord + std::fmt::Debug;

    /// `None` when the vertices are unknown or lie in different components.
    fn distance(&self, a: &Self::Vertex, b: &Self::Vertex) -> Option<u64>;

    /// Deterministic geodesic, endpoints included.
    fn geodesic(&self, a: &Self::Vertex, b: &Self::Vertex) -> Option<Vec<Self::Vertex>>;

    fn is_adjacent(&self, a: &Self::Vertex, b: &Self::Vertex) -> bool {
        self.distance(a, b) == Some(1)
    }
}

/// Simple undirected graph on vertices `0..n` with unit edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl FiniteGraph {
    /// Builds the graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints. Adjacency lists are sorted.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, MetricError> {
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count {
                return Err(MetricError::UnknownVertex(u));
            }
            if v >= vertex_count {
                return Err(MetricError::UnknownVertex(v));
            }
            if u == v {
                return Err(MetricError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(MetricError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            adj,
            edge_count: seen.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Hop distances from `src`; `u64::MAX` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.adj.len()];
        if src >= self.adj.len() {
            return dist;
        }
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u64::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.bfs(0).iter().all(|&d| d != u64::MAX)
    }

    /// Distance table for every pair; errors on a disconnected graph.
    pub fn all_pairs(&self) -> Result<Vec<Vec<u64>>, MetricError> {
        let table: Vec<Vec<u64>> = (0..self.adj.len()).map(|s| self.bfs(s)).collect();
        if table.iter().flatten().any(|&d| d == u64::MAX) {
            return Err(MetricError::Disconnected);
        }
        Ok(table)
    }

    /// Lexicographically smallest geodesic given the distances to `b`.
    pub(crate) fn geodesic_with(&self, a: usize, b: usize, to_b: &[u64]) -> Option<Vec<usize>> {
        if to_b[a] == u64::MAX {
            return None;
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self.adj[cur].iter().find(|&&n| to_b[n] + 1 == to_b[cur])?;
            path.push(cur);
        }
        Some(path)
    }
}

impl GraphMetric for FiniteGraph {
    type Vertex = usize;

    fn distance(&self, a: &usize, b: &usize) -> Option<u64> {
        if *a >= self.adj.len() || *b >= self.adj.len() {
            return None;
        }
        let d = self.bfs(*a)[*b];
        (d != u64::MAX).then_some(d)
    }

    fn geodesic(&self, a: &usize, b: &usize) -> Option<Vec<usize>> {
        if *a >= self.adj.len() || *b >= self.adj.len() {
            return None;
        }
        self.geodesic_with(*a, *b, &self.bfs(*b))
    }

    fn is_adjacent(&self, a: &usize, b: &usize) -> bool {
        self.adj.get(*a).is_some_and(|ns| ns.binary_search(b).is_ok())
    }
}
