use rayon::prelude::*;

use super::{FiniteGraph, MetricError};

/// Smallest `δ` such that every geodesic triangle with vertices in `g` is
/// `δ`-thin: each side lies in the `δ`-neighbourhood of the other two.
///
/// One geodesic per unordered pair is used, the lexicographically smallest
/// from the lower-numbered endpoint. Cost is cubic in `|V|` times the
/// squared diameter, so this is for small balls only.
pub fn estimate_delta(g: &FiniteGraph) -> Result<u64, MetricError> {
    let n = g.vertex_count();
    let dist = g.all_pairs()?;
    let geodesics: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a <= b {
                        g.geodesic_with(a, b, &dist[b]).expect("connected")
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect();
    let side = |a: usize, b: usize| -> &[usize] {
        &geodesics[a.min(b)][a.max(b)]
    };
    // distance from a point to the union of two sides
    let gap = |x: usize, s1: &[usize], s2: &[usize]| -> u64 {
        s1.iter()
            .chain(s2)
            .map(|&y| dist[x][y])
            .min()
            .unwrap_or(0)
    };
    let delta = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut worst = 0;
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ab, bc, ca) = (side(a, b), side(b, c), side(c, a));
                    for (s, o1, o2) in [(ab, bc, ca), (bc, ca, ab), (ca, ab, bc)] {
                        for &x in s {
                            worst = worst.max(gap(x, o1, o2));
                        }
                    }
                }
            }
            worst
        })
        .max()
        .unwrap_or(0);
    Ok(delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_are_zero_hyperbolic() {
        let path = FiniteGraph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap();
        assert_eq!(estimate_delta(&path).unwrap(), 0);
        let star = FiniteGraph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        assert_eq!(estimate_delta(&star).unwrap(), 0);
        let binary = FiniteGraph::from_edges(7, (1..7).map(|i| ((i - 1) / 2, i))).unwrap();
        assert_eq!(estimate_delta(&binary).unwrap(), 0);
    }

    #[test]
    fn six_cycle_against_direct_triangle_scan() {
        // Direct scan: the triangle (0,2,4) has side 0-1-2 whose midpoint 1
        // is at distance 1 from both 2-3-4 and 4-5-0, and no vertex of C6 is
        // farther than 1 from two sides of any triangle since the diameter is 3.
        let g = FiniteGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(estimate_delta(&g).unwrap(), 1);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = FiniteGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(estimate_delta(&g), Err(MetricError::Disconnected));
    }
}
