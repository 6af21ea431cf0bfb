// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Voting rules: PluralityVeto, FractionalVeto, k-round randomized veto and
//! the committee rule.

use thiserror::Error;

pub mod committee;
pub mod fractional;
pub mod veto;

pub use committee::{
    committee_compare, committee_select, committee_select_with_order, induced_election, prefix_committees, q_cost,
    q_social_cost, Committee, CommitteePreference, Side,
};
pub use fractional::{fractional_veto, FractionalStep, FractionalTrace, VoterPolicy};
pub use veto::{default_order, plurality_veto, random_dictatorship, randomized_veto, VetoRound, VetoTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("invalid voter order: {0}")]
    InvalidOrder(String),
    #[error("k = {k} rounds is out of range for n = {n} voters (need k <= n - 1)")]
    RoundsOutOfRange { k: usize, n: usize },
    #[error("{which} has {found} entries, expected {expected}")]
    WeightLength {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("rank q = {q} is out of range for committees of size {k}")]
    RankOutOfRange { q: usize, k: usize },
    #[error("rank q = {q} must exceed k/2 for committees of size {k}")]
    RankTooSmall { q: usize, k: usize },
    #[error("committee size k = {k} must be between 1 and m = {m}")]
    CommitteeSize { k: usize, m: usize },
    #[error("invalid committee {0}")]
    InvalidCommittee(String),
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
}
