// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! The flow network on voter-candidate pairs, (w, c*)-flows, their costs,
//! and the explicit cost-3 flow for the randomized veto rule.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::certify::CertifyError;
use crate::election::{Candidate, Election, Voter};
use crate::rules::{plurality_veto, randomized_veto, VetoTrace};
use crate::weights::{format_ratio, parse_ratio, ratio, Ratio, WeightVector};

/// A node `(v, c)` of the network.
pub type Node = (Voter, Candidate);

/// Nodes `V × C`, a preference edge `(v,c) → (v,c')` for every `c ≻_v c'`
/// (no transitive reduction), and sideways edges `(v,c) → (v',c)` for `v ≠ v'`.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    election: Election,
}

impl FlowNetwork {
    pub fn new(e: &Election) -> Self {
        FlowNetwork { election: e.clone() }
    }

    pub fn election(&self) -> &Election {
        &self.election
    }

    pub fn num_voters(&self) -> usize {
        self.election.num_voters()
    }

    pub fn num_candidates(&self) -> usize {
        self.election.num_candidates()
    }

    pub fn num_nodes(&self) -> usize {
        self.num_voters() * self.num_candidates()
    }

    pub fn num_preference_edges(&self) -> usize {
        let m = self.num_candidates();
        self.num_voters() * m * (m - 1) / 2
    }

    pub fn num_sideways_edges(&self) -> usize {
        let n = self.num_voters();
        self.num_candidates() * n * (n - 1)
    }

    fn contains(&self, (v, c): Node) -> bool {
        v < self.num_voters() && c < self.num_candidates()
    }

    pub fn is_preference_edge(&self, from: Node, to: Node) -> bool {
        self.contains(from) && self.contains(to) && from.0 == to.0 && self.election.prefers(from.0, from.1, to.1)
    }

    pub fn is_sideways_edge(&self, from: Node, to: Node) -> bool {
        self.contains(from) && self.contains(to) && from.1 == to.1 && from.0 != to.0
    }

    pub fn has_edge(&self, from: Node, to: Node) -> bool {
        self.is_preference_edge(from, to) || self.is_sideways_edge(from, to)
    }

    /// Every directed edge, preference edges first in row order.
    pub fn edges(&self) -> Vec<(Node, Node)> {
        let e = &self.election;
        let (n, m) = (self.num_voters(), self.num_candidates());
        let mut edges = Vec::with_capacity(self.num_preference_edges() + self.num_sideways_edges());
        for v in 0..n {
            let ranking = e.ranking(v);
            for (i, &a) in ranking.iter().enumerate() {
                for &b in &ranking[i + 1..] {
                    edges.push(((v, a), (v, b)));
                }
            }
        }
        for c in 0..m {
            for v in 0..n {
                for w in (0..n).filter(|&w| w != v) {
                    edges.push(((v, c), (w, c)));
                }
            }
        }
        edges
    }
}

/// Flow amounts on the edges of a network; absent edges carry zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowAssignment {
    pub edges: BTreeMap<(Node, Node), Ratio>,
}

impl FlowAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `amount` to the edge; zero amounts and self-loops are dropped.
    pub fn add(&mut self, from: Node, to: Node, amount: &Ratio) {
        if from == to || amount.is_zero() {
            return;
        }
        *self.edges.entry((from, to)).or_insert_with(Ratio::zero) += amount;
    }

    pub fn get(&self, from: Node, to: Node) -> Ratio {
        self.edges.get(&(from, to)).cloned().unwrap_or_else(Ratio::zero)
    }

    /// Parses lines `(v,c)->(v',c'): amount`; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, CertifyError> {
        let mut flow = FlowAssignment::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let bad = |reason: &str| CertifyError::FlowParse {
                line,
                reason: reason.to_string(),
            };
            let (edge, amount) = body
                .rsplit_once(':')
                .ok_or_else(|| bad("expected `(v,c)->(v',c'): amount`"))?;
            let (from, to) = edge.split_once("->").ok_or_else(|| bad("missing `->`"))?;
            let from = parse_node(from).ok_or_else(|| bad("bad source node"))?;
            let to = parse_node(to).ok_or_else(|| bad("bad target node"))?;
            let amount = parse_ratio(amount.trim()).map_err(|e| bad(&e.to_string()))?;
            if flow.edges.contains_key(&(from, to)) {
                return Err(bad("duplicate edge"));
            }
            flow.edges.insert((from, to), amount);
        }
        Ok(flow)
    }
}

fn parse_node(text: &str) -> Option<Node> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (v, c) = inner.split_once(',')?;
    Some((v.trim().parse().ok()?, c.trim().parse().ok()?))
}

impl fmt::Display for FlowAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&((v, c), (w, d)), amount) in &self.edges {
            writeln!(f, "({v},{c})->({w},{d}): {}", format_ratio(amount))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowCosts {
    /// `cost_v(g)` per voter.
    pub per_voter: Vec<Ratio>,
    /// Flow absorbed at `(v, c*)` per voter.
    pub absorbed: Vec<Ratio>,
    /// `max_v cost_v(g)`.
    pub cost: Ratio,
}

/// Checks that `g` is a `(w, c*)`-flow and returns its costs. The cost at
/// `v` is the flow absorbed at `(v, c*)` plus all sideways flow into or out
/// of `(v, c)` for `c ≠ c*`.
pub fn verify_flow(
    net: &FlowNetwork,
    g: &FlowAssignment,
    w: &WeightVector,
    cstar: Candidate,
) -> Result<FlowCosts, CertifyError> {
    let (n, m) = (net.num_voters(), net.num_candidates());
    if w.len() != m {
        return Err(CertifyError::Shape(format!(
            "w has {} entries for {m} candidates",
            w.len()
        )));
    }
    if cstar >= m {
        return Err(CertifyError::UnknownCandidate { cstar, m });
    }
    // Net inflow (injection + in − out) per node.
    let mut balance: Vec<Vec<Ratio>> = (0..n).map(|_| w.entries().to_vec()).collect();
    let mut sideways = vec![Ratio::zero(); n];
    for (&(from, to), amount) in &g.edges {
        if !net.has_edge(from, to) {
            return Err(CertifyError::NonexistentEdge { from, to });
        }
        if amount.is_negative() {
            return Err(CertifyError::NegativeFlow { from, to });
        }
        balance[from.0][from.1] -= amount;
        balance[to.0][to.1] += amount;
        if from.1 == to.1 && from.1 != cstar {
            sideways[from.0] += amount;
            sideways[to.0] += amount;
        }
    }
    for (v, row) in balance.iter().enumerate() {
        for (c, excess) in row.iter().enumerate() {
            if c != cstar && !excess.is_zero() {
                return Err(CertifyError::Conservation {
                    node: (v, c),
                    excess: format_ratio(excess),
                });
            }
        }
        if row[cstar].is_negative() {
            return Err(CertifyError::NegativeAbsorption {
                node: (v, cstar),
                deficit: format_ratio(&-&row[cstar]),
            });
        }
    }
    let absorbed: Vec<Ratio> = balance.into_iter().map(|row| row[cstar].clone()).collect();
    let per_voter: Vec<Ratio> = absorbed.iter().zip(&sideways).map(|(a, s)| a + s).collect();
    let cost = per_voter.iter().max().cloned().expect("n >= 1");
    Ok(FlowCosts {
        per_voter,
        absorbed,
        cost,
    })
}

/// The cost-3 `(w, c*)`-flow for `w = randomized_veto(e, k, trace.order)`.
///
/// For each of the first `k` round voters, the whole row is pushed down
/// her preference order onto the candidate she vetoed, moved sideways to
/// the paired voter and absorbed there. The remaining rows split each
/// candidate's residual mass uniformly over that candidate's unconsumed
/// supporters. Mass that would travel sideways within column `c*` is
/// absorbed where it stands instead, so column `c*` never carries sideways
/// flow.
pub fn construct_flow(
    e: &Election,
    trace: &VetoTrace,
    k: usize,
    cstar: Candidate,
) -> Result<FlowAssignment, CertifyError> {
    let (n, m) = (e.num_voters(), e.num_candidates());
    if cstar >= m {
        return Err(CertifyError::UnknownCandidate { cstar, m });
    }
    if k >= n {
        return Err(CertifyError::RoundsOutOfRange { k, n });
    }
    let replay = plurality_veto(e, &trace.order).map_err(|err| CertifyError::InconsistentTrace(err.to_string()))?;
    if replay.rounds != trace.rounds || replay.winner != trace.winner {
        return Err(CertifyError::InconsistentTrace(
            "rounds differ from a replay in the same order".into(),
        ));
    }
    let w = randomized_veto(e, k, &trace.order).expect("order and k validated");
    let mut g = FlowAssignment::new();

    for round in &trace.rounds[..k] {
        let (voter, target, receiver) = (round.voter, round.vetoed, round.paired_voter);
        for c in w.support() {
            g.add((voter, c), (voter, target), w.get(c));
        }
        if target == cstar {
            continue;
        }
        let one = ratio(1, 1);
        g.add((voter, target), (receiver, target), &one);
        g.add((receiver, target), (receiver, cstar), &one);
    }

    let sources: Vec<Voter> = trace.rounds[k..].iter().map(|r| r.voter).collect();
    let share = ratio(1, (n - k) as i64);
    for c in w.support() {
        if c == cstar {
            continue;
        }
        let receivers: Vec<Voter> = trace.rounds[k..]
            .iter()
            .map(|r| r.paired_voter)
            .filter(|&u| e.top(u) == c)
            .collect();
        for &source in &sources {
            for &receiver in &receivers {
                g.add((source, c), (receiver, c), &share);
            }
        }
        for &receiver in &receivers {
            g.add((receiver, c), (receiver, cstar), &ratio(1, 1));
        }
    }
    Ok(g)
}
