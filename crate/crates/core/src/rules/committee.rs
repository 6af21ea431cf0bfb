// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Committee selection under the q-cost objective.
//!
//! Each voter ranks committees by the position of her q-th favorite member;
//! equal q-th favorites are ordered by the sorted member lists. The rule
//! restricts attention to voters' top-k prefixes and runs PluralityVeto on
//! the induced election.

use std::fmt;

use crate::election::{Candidate, Election, Voter};
use crate::metric::Metric;
use crate::rules::veto::{check_order, default_order, plurality_veto};
use crate::rules::RuleError;

/// A set of distinct candidates, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Committee {
    members: Vec<Candidate>,
}

impl Committee {
    pub fn new(mut members: Vec<Candidate>, num_candidates: usize) -> Result<Self, RuleError> {
        members.sort_unstable();
        let distinct = members.windows(2).all(|w| w[0] != w[1]);
        if members.is_empty() || !distinct || members.iter().any(|&c| c >= num_candidates) {
            return Err(RuleError::InvalidCommittee(format!("{members:?}")));
        }
        Ok(Committee { members })
    }

    pub fn members(&self) -> &[Candidate] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, c: Candidate) -> bool {
        self.members.binary_search(&c).is_ok()
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", members.join(" "))
    }
}

/// Distance from `v` to her `q`-th closest member of `committee` (1-based `q`).
pub fn q_cost(v: Voter, committee: &Committee, d: &Metric, q: usize) -> Result<f64, RuleError> {
    check_rank(q, committee.len())?;
    let mut distances: Vec<f64> = committee.members().iter().map(|&c| d.get(v, c)).collect();
    distances.sort_by(f64::total_cmp);
    Ok(distances[q - 1])
}

/// Total q-cost of a committee over all voters.
pub fn q_social_cost(committee: &Committee, d: &Metric, q: usize) -> Result<f64, RuleError> {
    (0..d.num_voters()).map(|v| q_cost(v, committee, d, q)).sum()
}

fn check_rank(q: usize, k: usize) -> Result<(), RuleError> {
    if q == 0 || q > k {
        return Err(RuleError::RankOutOfRange { q, k });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommitteePreference {
    pub preferred: Side,
    /// Both committees share the same q-th favorite; the lexicographic rule decided.
    pub tie_broken: bool,
}

/// Sort key of a committee in `v`'s induced ranking; smaller is better.
fn committee_key<'a>(e: &Election, v: Voter, committee: &'a Committee, q: usize) -> (usize, &'a [Candidate]) {
    let mut positions: Vec<usize> = committee.members().iter().map(|&c| e.position(v, c)).collect();
    positions.sort_unstable();
    (positions[q - 1], committee.members())
}

/// Which of two size-k committees `v` prefers, judged by their q-th favorites.
pub fn committee_compare(
    e: &Election,
    v: Voter,
    first: &Committee,
    second: &Committee,
    q: usize,
) -> Result<CommitteePreference, RuleError> {
    if first.len() != second.len() {
        return Err(RuleError::InvalidCommittee(format!(
            "sizes differ: {first} vs {second}"
        )));
    }
    check_rank(q, first.len())?;
    let a = committee_key(e, v, first, q);
    let b = committee_key(e, v, second, q);
    let preferred = if a <= b { Side::First } else { Side::Second };
    Ok(CommitteePreference {
        preferred,
        tie_broken: a.0 == b.0,
    })
}

/// Distinct top-k prefixes of the ballots, in order of first appearance.
pub fn prefix_committees(e: &Election, k: usize) -> Result<Vec<Committee>, RuleError> {
    if k == 0 || k > e.num_candidates() {
        return Err(RuleError::CommitteeSize {
            k,
            m: e.num_candidates(),
        });
    }
    let mut committees: Vec<Committee> = Vec::new();
    for v in 0..e.num_voters() {
        let committee = Committee::new(e.ranking(v)[..k].to_vec(), e.num_candidates())?;
        if !committees.contains(&committee) {
            committees.push(committee);
        }
    }
    Ok(committees)
}

/// The election whose candidates are `committees`, ranked by each voter's q-th favorite.
pub fn induced_election(e: &Election, committees: &[Committee], q: usize) -> Result<Election, RuleError> {
    if let Some(bad) = committees.iter().find(|c| c.len() < q || q == 0) {
        return Err(RuleError::RankOutOfRange { q, k: bad.len() });
    }
    let rankings = (0..e.num_voters())
        .map(|v| {
            let mut ranking: Vec<usize> = (0..committees.len()).collect();
            ranking.sort_by_key(|&i| committee_key(e, v, &committees[i], q));
            ranking
        })
        .collect();
    Election::new(committees.len(), rankings).map_err(|err| RuleError::InvalidCommittee(err.to_string()))
}

/// Committee rule in the file voter order; requires `q > k/2`.
pub fn committee_select(e: &Election, k: usize, q: usize) -> Result<Committee, RuleError> {
    committee_select_with_order(e, k, q, &default_order(e))
}

pub fn committee_select_with_order(e: &Election, k: usize, q: usize, order: &[Voter]) -> Result<Committee, RuleError> {
    check_order(e, order)?;
    let committees = prefix_committees(e, k)?;
    check_rank(q, k)?;
    if 2 * q <= k {
        return Err(RuleError::RankTooSmall { q, k });
    }
    let induced = induced_election(e, &committees, q)?;
    let trace = plurality_veto(&induced, order)?;
    Ok(committees[trace.winner].clone())
}
