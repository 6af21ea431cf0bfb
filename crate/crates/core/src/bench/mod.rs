// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Synthetic instances, peer selection and Monte-Carlo experiments.

use thiserror::Error;

use crate::rules::RuleError;

pub mod experiment;
pub mod generate;
pub mod hull;
pub mod peer;
pub mod winners;

pub use experiment::{run_experiment, ExperimentConfig, ExperimentRecord, ExperimentReport, RuleSpec, RuleSummary};
pub use generate::{election_from_metric, generate_euclidean, Distribution, EuclideanPopulation, Point};
pub use hull::{convex_hull, is_hull_vertex, peeling_rounds};
pub use peer::{adaptive_peer_veto, adaptive_winners, peer_selection, random_peer_points, AdaptiveRun};
pub use winners::{potential_winners, WinnerMode, MAX_EXACT_VOTERS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("{n} voters is too many for exhaustive enumeration (max {max})")]
    TooManyVoters { n: usize, max: usize },
    #[error(transparent)]
    Rule(#[from] RuleError),
}
