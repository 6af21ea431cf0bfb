// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random Euclidean elections.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bench::BenchError;
use crate::election::{Candidate, Election};
use crate::metric::Metric;

/// Point distribution for generated voters and candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Distribution {
    /// I.i.d. coordinates uniform on `[0, 1)`.
    UniformCube,
    /// I.i.d. standard normal coordinates.
    #[default]
    Gaussian,
}

impl FromStr for Distribution {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "uniform" | "cube" => Ok(Distribution::UniformCube),
            "gaussian" | "normal" => Ok(Distribution::Gaussian),
            other => Err(BenchError::Config(format!("unknown distribution `{other}`"))),
        }
    }
}

pub type Point = Vec<f64>;

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Draws `count` points of dimension `dimension` from `rng`.
pub fn sample_points<R: Rng>(rng: &mut R, count: usize, dimension: usize, distribution: Distribution) -> Vec<Point> {
    (0..count)
        .map(|_| {
            (0..dimension)
                .map(|_| match distribution {
                    Distribution::UniformCube => rng.random::<f64>(),
                    Distribution::Gaussian => rng.sample(StandardNormal),
                })
                .collect()
        })
        .collect()
}

/// Voters and candidates embedded in `R^D`.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanPopulation {
    pub dimension: usize,
    pub voters: Vec<Point>,
    pub candidates: Vec<Point>,
    pub seed: u64,
}

impl EuclideanPopulation {
    /// Voter points are drawn first, then candidate points.
    pub fn generate(
        n: usize,
        m: usize,
        dimension: usize,
        distribution: Distribution,
        seed: u64,
    ) -> Result<Self, BenchError> {
        if n == 0 || m == 0 || dimension == 0 {
            return Err(BenchError::Config(format!(
                "need n, m, D >= 1, got n={n} m={m} D={dimension}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let voters = sample_points(&mut rng, n, dimension, distribution);
        let candidates = sample_points(&mut rng, m, dimension, distribution);
        Ok(EuclideanPopulation {
            dimension,
            voters,
            candidates,
            seed,
        })
    }

    pub fn metric(&self) -> Metric {
        let rows = self
            .voters
            .iter()
            .map(|v| self.candidates.iter().map(|c| euclidean(v, c)).collect())
            .collect();
        Metric::from_rows(rows).expect("distances are finite and non-negative")
    }

    /// Rankings by increasing distance; equal distances go to the lower index.
    pub fn election(&self) -> Election {
        election_from_metric(&self.metric())
    }
}

/// Ballots sorted by distance with the candidate index as tie-break.
pub fn election_from_metric(d: &Metric) -> Election {
    let rankings = (0..d.num_voters())
        .map(|v| {
            let row = d.row(v);
            let mut ranking: Vec<Candidate> = (0..d.num_candidates()).collect();
            ranking.sort_by(|&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b)));
            ranking
        })
        .collect();
    Election::new(d.num_candidates(), rankings).expect("non-empty permutations")
}

/// A seeded random election together with the metric that induced it.
pub fn generate_euclidean(
    n: usize,
    m: usize,
    dimension: usize,
    distribution: Distribution,
    seed: u64,
) -> Result<(Election, Metric), BenchError> {
    let population = EuclideanPopulation::generate(n, m, dimension, distribution, seed)?;
    Ok((population.election(), population.metric()))
}
