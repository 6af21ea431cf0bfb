// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! FractionalVeto: veto with arbitrary voter weights `p` and candidate weights `q`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::election::{Candidate, Election, Voter};
use crate::rules::veto::check_order;
use crate::rules::RuleError;
use crate::weights::{Ratio, WeightVector};

/// Which positive-weight voter acts next.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum VoterPolicy {
    /// Lowest voter index with positive remaining weight.
    #[default]
    LowestIndex,
    /// First voter of the given permutation with positive remaining weight.
    Order(Vec<Voter>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalStep {
    pub voter: Voter,
    pub candidate: Candidate,
    pub amount: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalTrace {
    pub steps: Vec<FractionalStep>,
    pub winner: Candidate,
    /// Total weight assigned to each edge `(v, c)` of the winner's (p,q)-domination graph.
    pub matching: BTreeMap<(Voter, Candidate), Ratio>,
}

pub fn fractional_veto(
    e: &Election,
    p: &WeightVector,
    q: &WeightVector,
    policy: &VoterPolicy,
) -> Result<FractionalTrace, RuleError> {
    let (n, m) = (e.num_voters(), e.num_candidates());
    if p.len() != n {
        return Err(RuleError::WeightLength {
            which: "p",
            expected: n,
            found: p.len(),
        });
    }
    if q.len() != m {
        return Err(RuleError::WeightLength {
            which: "q",
            expected: m,
            found: q.len(),
        });
    }
    let order: Vec<Voter> = match policy {
        VoterPolicy::LowestIndex => (0..n).collect(),
        VoterPolicy::Order(order) => {
            check_order(e, order)?;
            order.clone()
        }
    };

    let mut voter_weight: Vec<Ratio> = p.entries().to_vec();
    let mut candidate_weight: Vec<Ratio> = q.entries().to_vec();
    let mut steps = Vec::new();
    let mut matching: BTreeMap<(Voter, Candidate), Ratio> = BTreeMap::new();
    // Weight is consumed in order, so the first positive voter never moves backwards.
    let mut cursor = 0;
    loop {
        while cursor < n && !voter_weight[order[cursor]].is_positive() {
            cursor += 1;
        }
        if cursor == n {
            break;
        }
        let voter = order[cursor];
        let active: Vec<Candidate> = (0..m).filter(|&c| candidate_weight[c].is_positive()).collect();
        let candidate = e
            .bottom_among(voter, &active)
            .expect("voter and candidate weights have equal totals");
        let amount = voter_weight[voter].clone().min(candidate_weight[candidate].clone());
        voter_weight[voter] -= &amount;
        candidate_weight[candidate] -= &amount;
        *matching.entry((voter, candidate)).or_insert_with(Ratio::zero) += &amount;
        steps.push(FractionalStep {
            voter,
            candidate,
            amount,
        });
    }
    let winner = steps.last().expect("p sums to 1").candidate;
    Ok(FractionalTrace {
        steps,
        winner,
        matching,
    })
}
