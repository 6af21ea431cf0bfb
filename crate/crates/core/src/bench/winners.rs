// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Candidates that win PluralityVeto under some voter order.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::bench::BenchError;
use crate::certify::{domination_graph, has_perfect_matching};
use crate::election::{Candidate, Election};
use crate::rules::plurality_veto;

/// Largest electorate for which every order is enumerated (8! = 40,320 runs).
pub const MAX_EXACT_VOTERS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WinnerMode {
    /// Run every voter order.
    Exact,
    /// Candidates whose domination graph has a perfect matching; contains the exact set.
    Superset,
}

pub fn potential_winners(e: &Election, mode: WinnerMode) -> Result<BTreeSet<Candidate>, BenchError> {
    match mode {
        WinnerMode::Exact => {
            let n = e.num_voters();
            if n > MAX_EXACT_VOTERS {
                return Err(BenchError::TooManyVoters {
                    n,
                    max: MAX_EXACT_VOTERS,
                });
            }
            let mut winners = BTreeSet::new();
            for order in (0..n).permutations(n) {
                winners.insert(plurality_veto(e, &order)?.winner);
                if winners.len() == e.num_candidates() {
                    break;
                }
            }
            Ok(winners)
        }
        WinnerMode::Superset => Ok((0..e.num_candidates())
            .filter(|&c| has_perfect_matching(&domination_graph(e, c)).is_some())
            .collect()),
    }
}
