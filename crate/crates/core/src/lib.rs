// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! PluralityVeto and its relatives, with machine-checkable certificates of
//! their metric distortion.
//!
//! - [`election`] parses ranked ballots; [`weights`] holds exact rational
//!   distributions.
//! - [`rules`] implements PluralityVeto, FractionalVeto, k-round randomized
//!   veto and the committee rule.
//! - [`certify`] builds domination-graph matchings, flows, LP duals and the
//!   distortion LP.
//! - [`bench`] generates Euclidean instances and runs experiments.

pub mod bench;
pub mod certify;
pub mod election;
pub mod metric;
pub mod rules;
pub mod simplex;
pub mod weights;

pub use election::{Candidate, Election, Voter};
pub use metric::Metric;
pub use weights::{Ratio, WeightVector};
