// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Peer selection: every agent is both a voter and a candidate.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bench::generate::{euclidean, sample_points, Distribution, Point};
use crate::bench::BenchError;
use crate::election::{Candidate, Election, Voter};
use crate::metric::Metric;

/// Agent `i` ranks herself first, then everyone else by distance (lower
/// index first on ties). Voter `i` and candidate `i` are the same agent.
pub fn peer_selection(points: &[Point]) -> Result<(Election, Metric), BenchError> {
    if points.is_empty() {
        return Err(BenchError::Config("peer selection needs at least one agent".into()));
    }
    let n = points.len();
    let rows: Vec<Vec<f64>> = points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (0..n)
                .map(|j| if i == j { 0.0 } else { euclidean(p, &points[j]) })
                .collect()
        })
        .collect();
    let rankings = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut ranking: Vec<Candidate> = (0..n).filter(|&j| j != i).collect();
            ranking.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
            ranking.insert(0, i);
            ranking
        })
        .collect();
    let e = Election::new(n, rankings).expect("permutations of 0..n");
    Ok((e, Metric::from_rows(rows).expect("finite distances")))
}

/// Seeded random agents for peer selection.
pub fn random_peer_points(n: usize, dimension: usize, distribution: Distribution, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_points(&mut rng, n, dimension, distribution)
}

/// Run of the adaptive-order variant: `voters[0]` is the start, whose
/// first-place vote is cancelled before any veto, and each later voter is
/// the one whose vote the previous voter cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveRun {
    pub voters: Vec<Voter>,
    /// Candidate vetoed by `voters[i]`, for the first `n - 1` voters.
    pub vetoed: Vec<Candidate>,
    /// Top choice of the last voter.
    pub winner: Candidate,
}

/// Adaptive-order veto from `start`. This is not a PluralityVeto order:
/// the start's own vote is cancelled without a veto, and the last voter
/// never vetoes.
pub fn adaptive_peer_veto(e: &Election, start: Voter) -> Result<AdaptiveRun, BenchError> {
    let n = e.num_voters();
    if start >= n {
        return Err(BenchError::Config(format!("start voter {start} out of range")));
    }
    let mut scores = e.plurality_scores();
    let mut cancelled = vec![false; n];
    scores[e.top(start)] -= 1;
    cancelled[start] = true;
    let mut voters = vec![start];
    let mut vetoed = Vec::with_capacity(n - 1);
    let mut current = start;
    for _ in 1..n {
        let active: Vec<Candidate> = (0..e.num_candidates()).filter(|&c| scores[c] > 0).collect();
        let c = e.bottom_among(current, &active).expect("uncancelled votes remain");
        let next = (0..n)
            .find(|&u| !cancelled[u] && e.top(u) == c)
            .expect("positive score has an uncancelled supporter");
        scores[c] -= 1;
        cancelled[next] = true;
        vetoed.push(c);
        voters.push(next);
        current = next;
    }
    Ok(AdaptiveRun {
        voters,
        vetoed,
        winner: e.top(current),
    })
}

/// Winners of the adaptive variant over every start voter.
pub fn adaptive_winners(e: &Election) -> BTreeSet<Candidate> {
    (0..e.num_voters())
        .map(|s| adaptive_peer_veto(e, s).expect("start in range").winner)
        .collect()
}
