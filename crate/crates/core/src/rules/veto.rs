// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Plurality scores followed by multi-round veto, deterministic and randomized.

use std::collections::VecDeque;
use std::fmt;

use crate::election::{Candidate, Election, Voter};
use crate::rules::RuleError;
use crate::weights::{ratio, WeightVector};

/// One veto round: voter `voter` removes a point from `vetoed`, her bottom
/// choice among `active`, consuming the first-place vote of `paired_voter`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VetoRound {
    /// 1-based round number.
    pub index: usize,
    pub voter: Voter,
    /// Candidates with positive score at the start of the round, ascending.
    pub active: Vec<Candidate>,
    pub vetoed: Candidate,
    pub paired_voter: Voter,
}

/// Full record of a veto run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VetoTrace {
    pub order: Vec<Voter>,
    pub initial_scores: Vec<usize>,
    pub rounds: Vec<VetoRound>,
    pub final_scores: Vec<usize>,
    pub winner: Candidate,
}

impl VetoTrace {
    /// Scores after the first `k` rounds.
    pub fn scores_after(&self, k: usize) -> Vec<usize> {
        let mut scores = self.initial_scores.clone();
        for round in &self.rounds[..k] {
            scores[round.vetoed] -= 1;
        }
        scores
    }

    /// Parses the text produced by `Display`.
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let malformed = |line: usize, why: &str| RuleError::MalformedTrace(format!("line {line}: {why}"));
        let mut rounds = Vec::new();
        let mut winner = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if let Some(rest) = body.strip_prefix("winner:") {
                winner = Some(rest.trim().parse().map_err(|_| malformed(line, "bad winner"))?);
                continue;
            }
            let open = body.find('{').ok_or_else(|| malformed(line, "missing active set"))?;
            let close = body.find('}').ok_or_else(|| malformed(line, "missing active set"))?;
            let head: Vec<&str> = body[..open]
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let tail: Vec<&str> = body[close + 1..]
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if head.len() != 2 || tail.len() != 2 {
                return Err(malformed(line, "expected `i, v, {A}, c, v'`"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| malformed(line, "bad integer"));
            let active = body[open + 1..close]
                .split_whitespace()
                .map(num)
                .collect::<Result<Vec<_>, _>>()?;
            rounds.push(VetoRound {
                index: num(head[0])?,
                voter: num(head[1])?,
                active,
                vetoed: num(tail[0])?,
                paired_voter: num(tail[1])?,
            });
        }
        let winner = winner.ok_or_else(|| RuleError::MalformedTrace("missing `winner:` line".into()))?;
        let order = rounds.iter().map(|r| r.voter).collect();
        // Scores are implied by the rounds: each veto consumes one first-place vote.
        let num_candidates = rounds
            .iter()
            .flat_map(|r| r.active.iter().copied().chain([r.vetoed]))
            .chain([winner])
            .max()
            .map_or(0, |c| c + 1);
        let mut initial_scores = vec![0; num_candidates];
        for r in &rounds {
            initial_scores[r.vetoed] += 1;
        }
        Ok(VetoTrace {
            order,
            initial_scores,
            rounds,
            final_scores: vec![0; num_candidates],
            winner,
        })
    }
}

impl fmt::Display for VetoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# round, voter, active, vetoed, paired")?;
        for r in &self.rounds {
            let active: Vec<String> = r.active.iter().map(|c| c.to_string()).collect();
            writeln!(
                f,
                "{}, {}, {{{}}}, {}, {}",
                r.index,
                r.voter,
                active.join(" "),
                r.vetoed,
                r.paired_voter
            )?;
        }
        writeln!(f, "winner: {}", self.winner)
    }
}

/// The file order `0, 1, ..., n-1`.
pub fn default_order(e: &Election) -> Vec<Voter> {
    (0..e.num_voters()).collect()
}

pub(crate) fn check_order(e: &Election, order: &[Voter]) -> Result<(), RuleError> {
    let n = e.num_voters();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(RuleError::InvalidOrder(format!(
            "expected {n} voters, found {}",
            order.len()
        )));
    }
    for &v in order {
        if v >= n || seen[v] {
            return Err(RuleError::InvalidOrder(format!("voter {v} is unknown or repeated")));
        }
        seen[v] = true;
    }
    Ok(())
}

/// Runs `rounds` veto rounds; returns the rounds and the residual scores.
fn veto_rounds(e: &Election, order: &[Voter], rounds: usize) -> (Vec<VetoRound>, Vec<usize>) {
    let mut scores = e.plurality_scores();
    // Voters whose first-place vote is still unconsumed, per candidate, in index order.
    let mut supporters: Vec<VecDeque<Voter>> = vec![VecDeque::new(); e.num_candidates()];
    for v in 0..e.num_voters() {
        supporters[e.top(v)].push_back(v);
    }
    let mut trace = Vec::with_capacity(rounds);
    for (i, &voter) in order.iter().take(rounds).enumerate() {
        let active: Vec<Candidate> = (0..e.num_candidates()).filter(|&c| scores[c] > 0).collect();
        let vetoed = e
            .bottom_among(voter, &active)
            .expect("scores sum to the number of remaining rounds");
        scores[vetoed] -= 1;
        let paired_voter = supporters[vetoed]
            .pop_front()
            .expect("a positive score has an unconsumed supporter");
        trace.push(VetoRound {
            index: i + 1,
            voter,
            active,
            vetoed,
            paired_voter,
        });
    }
    (trace, scores)
}

/// PluralityVeto: every voter in `order` vetoes her bottom choice among the
/// candidates with positive score. The candidate vetoed last wins.
pub fn plurality_veto(e: &Election, order: &[Voter]) -> Result<VetoTrace, RuleError> {
    check_order(e, order)?;
    let (rounds, final_scores) = veto_rounds(e, order, e.num_voters());
    let winner = rounds.last().expect("n >= 1").vetoed;
    Ok(VetoTrace {
        order: order.to_vec(),
        initial_scores: e.plurality_scores(),
        rounds,
        final_scores,
        winner,
    })
}

/// k-round randomized veto: after `k` rounds each candidate wins with
/// probability proportional to his residual score.
pub fn randomized_veto(e: &Election, k: usize, order: &[Voter]) -> Result<WeightVector, RuleError> {
    check_order(e, order)?;
    let n = e.num_voters();
    if k >= n {
        return Err(RuleError::RoundsOutOfRange { k, n });
    }
    let (_, scores) = veto_rounds(e, order, k);
    let remaining = (n - k) as i64;
    let w = scores.iter().map(|&s| ratio(s as i64, remaining)).collect();
    Ok(WeightVector::new(w).expect("residual scores sum to n - k"))
}

/// Uniformly random voter's top choice; identical to `randomized_veto(e, 0, _)`.
pub fn random_dictatorship(e: &Election) -> WeightVector {
    WeightVector::from_counts(&e.plurality_scores()).expect("n >= 1")
}
