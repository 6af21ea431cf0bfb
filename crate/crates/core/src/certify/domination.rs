// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Domination graphs and their (fractional) perfect matchings.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::certify::maxflow::RationalFlowNetwork;
use crate::certify::CertifyError;
use crate::election::{Candidate, Election, Voter};
use crate::rules::VetoTrace;
use crate::weights::{format_ratio, Ratio, WeightVector};

/// `G(c)`: voter `v` is joined to voter `v'` iff `c ⪰_v top(v')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationGraph {
    pub candidate: Candidate,
    /// `adjacency[v]` lists the right-hand voters adjacent to `v`, ascending.
    pub adjacency: Vec<Vec<Voter>>,
}

impl DominationGraph {
    pub fn num_voters(&self) -> usize {
        self.adjacency.len()
    }

    pub fn has_edge(&self, v: Voter, w: Voter) -> bool {
        self.adjacency[v].binary_search(&w).is_ok()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

pub fn domination_graph(e: &Election, c: Candidate) -> DominationGraph {
    let n = e.num_voters();
    let adjacency = (0..n)
        .map(|v| (0..n).filter(|&w| e.weakly_prefers(v, c, e.top(w))).collect())
        .collect();
    DominationGraph {
        candidate: c,
        adjacency,
    }
}

/// Hopcroft–Karp maximum matching; `mate[v]` is the right-hand partner of `v`.
pub fn maximum_matching(g: &DominationGraph) -> Vec<Option<Voter>> {
    const FREE: usize = usize::MAX;
    let n = g.num_voters();
    let mut mate_left = vec![FREE; n];
    let mut mate_right = vec![FREE; n];
    let mut dist = vec![0usize; n];

    fn bfs(g: &DominationGraph, mate_left: &[usize], mate_right: &[usize], dist: &mut [usize]) -> bool {
        let mut queue = VecDeque::new();
        for v in 0..g.num_voters() {
            if mate_left[v] == FREE {
                dist[v] = 0;
                queue.push_back(v);
            } else {
                dist[v] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(v) = queue.pop_front() {
            for &w in &g.adjacency[v] {
                match mate_right[w] {
                    FREE => found = true,
                    u if dist[u] == usize::MAX => {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                    _ => {}
                }
            }
        }
        found
    }

    fn dfs(
        g: &DominationGraph,
        v: usize,
        mate_left: &mut [usize],
        mate_right: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for i in 0..g.adjacency[v].len() {
            let w = g.adjacency[v][i];
            let u = mate_right[w];
            if u == FREE || (dist[u] == dist[v] + 1 && dfs(g, u, mate_left, mate_right, dist)) {
                mate_left[v] = w;
                mate_right[w] = v;
                return true;
            }
        }
        dist[v] = usize::MAX;
        false
    }

    while bfs(g, &mate_left, &mate_right, &mut dist) {
        for v in 0..n {
            if mate_left[v] == FREE {
                dfs(g, v, &mut mate_left, &mut mate_right, &mut dist);
            }
        }
    }
    mate_left.into_iter().map(|w| (w != FREE).then_some(w)).collect()
}

/// A perfect matching of `g` (left voter → right voter), if one exists.
pub fn has_perfect_matching(g: &DominationGraph) -> Option<Vec<Voter>> {
    maximum_matching(g).into_iter().collect()
}

/// Checks that `i ↦ v'_i` is a perfect matching of the winner's domination
/// graph with `top(v'_i) = c_i` in every round.
pub fn verify_veto_matching(e: &Election, trace: &VetoTrace) -> Result<bool, CertifyError> {
    let n = e.num_voters();
    let m = e.num_candidates();
    let malformed = |why: String| Err(CertifyError::MalformedTrace(why));
    if trace.rounds.len() != n {
        return malformed(format!("{} rounds for {n} voters", trace.rounds.len()));
    }
    if trace.winner >= m {
        return malformed(format!("winner {} out of range", trace.winner));
    }
    for r in &trace.rounds {
        if r.voter >= n || r.paired_voter >= n || r.vetoed >= m {
            return malformed(format!("round {} references an unknown voter or candidate", r.index));
        }
    }
    let g = domination_graph(e, trace.winner);
    let mut voters_seen = vec![false; n];
    let mut paired_seen = vec![false; n];
    for r in &trace.rounds {
        if std::mem::replace(&mut voters_seen[r.voter], true)
            || std::mem::replace(&mut paired_seen[r.paired_voter], true)
        {
            return Ok(false);
        }
        if e.top(r.paired_voter) != r.vetoed || !g.has_edge(r.voter, r.paired_voter) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G_{p,q}(c̃)`: voter `v` is joined to candidate `c` iff `c̃ ⪰_v c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQDominationGraph {
    pub candidate: Candidate,
    pub p: WeightVector,
    pub q: WeightVector,
    pub adjacency: Vec<Vec<Candidate>>,
}

impl PQDominationGraph {
    pub fn has_edge(&self, v: Voter, c: Candidate) -> bool {
        self.adjacency[v].binary_search(&c).is_ok()
    }
}

pub fn pq_domination_graph(
    e: &Election,
    p: &WeightVector,
    q: &WeightVector,
    candidate: Candidate,
) -> Result<PQDominationGraph, CertifyError> {
    if p.len() != e.num_voters() || q.len() != e.num_candidates() {
        return Err(CertifyError::Shape(format!(
            "p has {} entries and q has {}, election is {}x{}",
            p.len(),
            q.len(),
            e.num_voters(),
            e.num_candidates()
        )));
    }
    let adjacency = (0..e.num_voters())
        .map(|v| {
            (0..e.num_candidates())
                .filter(|&c| e.weakly_prefers(v, candidate, c))
                .collect()
        })
        .collect();
    Ok(PQDominationGraph {
        candidate,
        p: p.clone(),
        q: q.clone(),
        adjacency,
    })
}

pub type FractionalMatching = BTreeMap<(Voter, Candidate), Ratio>;

/// Exact feasibility test by max-flow: source → v (cap `p_v`), v → c on
/// graph edges, c → sink (cap `q_c`). Feasible iff the flow value is 1.
pub fn fractional_perfect_matching(g: &PQDominationGraph) -> Option<FractionalMatching> {
    let n = g.p.len();
    let m = g.q.len();
    let source = 0;
    let sink = n + m + 1;
    let mut net = RationalFlowNetwork::new(n + m + 2);
    for v in 0..n {
        net.add_edge(source, 1 + v, g.p.get(v).clone());
        for &c in &g.adjacency[v] {
            // The total supply is 1, so capacity 1 never binds.
            net.add_edge(1 + v, 1 + n + c, Ratio::one());
        }
    }
    for c in 0..m {
        net.add_edge(1 + n + c, sink, g.q.get(c).clone());
    }
    let value = net.max_flow(source, sink);
    if !value.is_one() {
        return None;
    }
    let mut matching = FractionalMatching::new();
    for v in 0..n {
        for &c in &g.adjacency[v] {
            let f = net.flow_between(1 + v, 1 + n + c);
            if f.is_positive() {
                matching.insert((v, c), f);
            }
        }
    }
    Some(matching)
}

/// Exact node-balance check of a fractional perfect matching.
pub fn check_fractional_matching(g: &PQDominationGraph, w: &FractionalMatching) -> Result<(), CertifyError> {
    let mut voter_total = vec![Ratio::zero(); g.p.len()];
    let mut candidate_total = vec![Ratio::zero(); g.q.len()];
    for (&(v, c), amount) in w {
        if v >= g.p.len() || c >= g.q.len() || !g.has_edge(v, c) {
            return Err(CertifyError::MatchingViolation(format!(
                "({v},{c}) is not an edge of G_pq({})",
                g.candidate
            )));
        }
        if amount.is_negative() {
            return Err(CertifyError::MatchingViolation(format!(
                "({v},{c}) has negative weight"
            )));
        }
        voter_total[v] += amount;
        candidate_total[c] += amount;
    }
    for (v, total) in voter_total.iter().enumerate() {
        if total != g.p.get(v) {
            return Err(CertifyError::MatchingViolation(format!(
                "voter {v} carries {} but has weight {}",
                format_ratio(total),
                format_ratio(g.p.get(v))
            )));
        }
    }
    for (c, total) in candidate_total.iter().enumerate() {
        if total != g.q.get(c) {
            return Err(CertifyError::MatchingViolation(format!(
                "candidate {c} carries {} but has weight {}",
                format_ratio(total),
                format_ratio(g.q.get(c))
            )));
        }
    }
    Ok(())
}
