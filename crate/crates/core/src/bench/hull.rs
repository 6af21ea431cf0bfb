// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Planar convex hulls and the peeling behavior of peer-selection vetoes.

use crate::bench::generate::Point;
use crate::bench::BenchError;
use crate::election::{Candidate, Election};
use crate::rules::plurality_veto;

fn cross(o: &[f64], a: &[f64], b: &[f64]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Indices (into `points`) of the strict vertices of the hull of the
/// selected points, counter-clockwise. Andrew's monotone chain; collinear
/// boundary points are not vertices.
pub fn convex_hull(points: &[Point], subset: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(&points[hull[hull.len() - 2]], &points[hull[hull.len() - 1]], &points[p]) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Whether `points[target]` sits at a vertex of the hull of `subset`
/// (a duplicate of a vertex counts).
pub fn is_hull_vertex(points: &[Point], subset: &[usize], target: usize) -> bool {
    convex_hull(points, subset).iter().any(|&h| points[h] == points[target])
}

/// For a 2-D peer-selection election over `points`, runs PluralityVeto in
/// `order` and reports, per round, whether the vetoed agent lies on the hull
/// of the agents not yet eliminated. `e` must come from `peer_selection(points)`.
pub fn peeling_rounds(points: &[Point], e: &Election, order: &[usize]) -> Result<Vec<(Candidate, bool)>, BenchError> {
    if points.iter().any(|p| p.len() != 2) || points.len() != e.num_candidates() {
        return Err(BenchError::Config(
            "peeling check needs 2-D points, one per candidate".into(),
        ));
    }
    let trace = plurality_veto(e, order)?;
    Ok(trace
        .rounds
        .iter()
        .map(|r| (r.vetoed, is_hull_vertex(points, &r.active, r.vetoed)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(f64, f64)]) -> Vec<Point> {
        raw.iter().map(|&(x, y)| vec![x, y]).collect()
    }

    #[test]
    fn square_with_center() {
        let p = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5), (0.5, 0.0)]);
        let all: Vec<usize> = (0..6).collect();
        let mut hull = convex_hull(&p, &all);
        hull.sort_unstable();
        assert_eq!(hull, vec![0, 1, 2, 3]);
        assert!(!is_hull_vertex(&p, &all, 4));
        assert!(!is_hull_vertex(&p, &all, 5));
        assert!(is_hull_vertex(&p, &[4, 5], 4));
    }

    #[test]
    fn degenerate_sets() {
        let p = pts(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert_eq!(convex_hull(&p, &[1]), vec![1]);
        let mut hull = convex_hull(&p, &[0, 1, 2]);
        hull.sort_unstable();
        assert_eq!(hull, vec![0, 2]);
    }
}
