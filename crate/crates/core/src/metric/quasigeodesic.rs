use super::{GraphMetric, MetricError};
use crate::Scalar;

fn check_walk<G: GraphMetric>(path: &[G::Vertex], g: &G) -> Result<(), MetricError> {
    if path.is_empty() {
        return Err(MetricError::EmptyPath);
    }
    for (i, w) in path.windows(2).enumerate() {
        if w[0] != w[1] && !g.is_adjacent(&w[0], &w[1]) {
            return Err(MetricError::NotAWalk(i));
        }
    }
    Ok(())
}

fn dist<G: GraphMetric>(g: &G, a: &G::Vertex, b: &G::Vertex) -> Result<u64, MetricError> {
    g.distance(a, b).ok_or(MetricError::Disconnected)
}

/// Every subpath of parameter length at most `d` satisfies
/// `|s-t|/K - C <= d(γ(s), γ(t)) <= K|s-t| + C`.
pub fn is_local_quasigeodesic<T: Scalar, G: GraphMetric>(
    path: &[G::Vertex],
    d: &T,
    k: &T,
    c: &T,
    g: &G,
) -> Result<bool, MetricError> {
    check_walk(path, g)?;
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            let span = T::from_int((j - i) as i64);
            if span > *d {
                break;
            }
            let actual = T::from_int(dist(g, &path[i], &path[j])? as i64);
            let lower = span.clone() / k.clone() - c.clone();
            let upper = k.clone() * span + c.clone();
            if actual < lower || actual > upper {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hausdorff distance between the vertices of `path` and the chosen
/// geodesic joining its endpoints.
pub fn hausdorff_quasigeodesic<G: GraphMetric>(
    path: &[G::Vertex],
    g: &G,
) -> Result<u64, MetricError> {
    check_walk(path, g)?;
    let geod = g
        .geodesic(&path[0], &path[path.len() - 1])
        .ok_or(MetricError::Disconnected)?;
    let one_way = |from: &[G::Vertex], to: &[G::Vertex]| -> Result<u64, MetricError> {
        let mut worst = 0;
        for x in from {
            let mut best = u64::MAX;
            for y in to {
                best = best.min(dist(g, x, y)?);
            }
            worst = worst.max(best);
        }
        Ok(worst)
    };
    Ok(one_way(path, &geod)?.max(one_way(&geod, path)?))
}

/// Closest-point projections of a `(K, C)`-quasigeodesic to the geodesic
/// between its endpoints occur in order once parameters are more than
/// `P = 2K(C + 2R) + K²` apart.
///
/// The quasigeodesic and Hausdorff hypotheses are verified first and
/// reported as [`MetricError::Precondition`] when they fail.
pub fn check_projection_monotone<T: Scalar, G: GraphMetric>(
    path: &[G::Vertex],
    k: &T,
    c: &T,
    r: &T,
    g: &G,
) -> Result<bool, MetricError> {
    check_walk(path, g)?;
    let infinite = T::from_int(path.len() as i64 + 1);
    if !is_local_quasigeodesic(path, &infinite, k, c, g)? {
        return Err(MetricError::Precondition(format!(
            "path is not a ({k}, {c})-quasigeodesic"
        )));
    }
    let h = T::from_int(hausdorff_quasigeodesic(path, g)? as i64);
    if h > *r {
        return Err(MetricError::Precondition(format!(
            "Hausdorff distance {h} exceeds R = {r}"
        )));
    }
    let two = T::from_int(2);
    let p = two.clone() * k.clone() * (c.clone() + two * r.clone()) + k.clone() * k.clone();
    let geod = g
        .geodesic(&path[0], &path[path.len() - 1])
        .ok_or(MetricError::Disconnected)?;
    let mut positions = Vec::with_capacity(path.len());
    for x in path {
        let mut best = (u64::MAX, 0usize);
        for (i, y) in geod.iter().enumerate() {
            let d = dist(g, x, y)?;
            if d < best.0 {
                best = (d, i);
            }
        }
        positions.push(best.1);
    }
    for s in 0..path.len() {
        for t in s + 1..path.len() {
            if T::from_int((t - s) as i64) > p && positions[s] >= positions[t] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
