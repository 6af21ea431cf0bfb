// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Dual solutions of the distortion LP built from flows, and an exact
//! checker for the dual constraints.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::certify::flow::{verify_flow, FlowAssignment, FlowNetwork};
use crate::certify::CertifyError;
use crate::election::{Candidate, Voter};
use crate::weights::{format_ratio, Ratio, WeightVector};

/// Dual variables; absent multipliers are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSolution {
    /// Multiplier of the normalization constraint (free in sign).
    pub alpha: Ratio,
    /// `y^δ(v, c, c')` for the consistency constraint `x_{c,v} ≤ x_{c',v}`, `c ≻_v c'`.
    pub consistency: BTreeMap<(Voter, Candidate, Candidate), Ratio>,
    /// `y^Δ(v, v', c, c')` for `x_{c,v} ≤ x_{c,v'} + x_{c',v'} + x_{c',v}`.
    pub triangle: BTreeMap<(Voter, Voter, Candidate, Candidate), Ratio>,
}

/// Outcome of evaluating every dual constraint exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualReport {
    /// Per voter, the rearranged left-hand side of the `c*` constraint; feasible iff `≤ α`.
    pub voter_lhs: Vec<Ratio>,
    /// Per `(v, c)` with `c ≠ c*`, `w_c` minus the dual column sum; feasible iff `≤ 0`.
    pub residuals: BTreeMap<(Voter, Candidate), Ratio>,
    /// The dual objective, equal to `α`.
    pub objective: Ratio,
    /// Human-readable description of each violated constraint.
    pub violations: Vec<String>,
}

impl DualReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the dual constraints column by column: each multiplier adds
/// its primal row's coefficients to the columns `x_{c,v}` it touches.
pub fn check_dual(net: &FlowNetwork, w: &WeightVector, cstar: Candidate, y: &DualSolution) -> DualReport {
    let e = net.election();
    let (n, m) = (e.num_voters(), e.num_candidates());
    let mut column = vec![vec![Ratio::zero(); m]; n];
    let mut violations = Vec::new();
    for (&(v, a, b), value) in &y.consistency {
        if value.is_negative() {
            violations.push(format!("y_delta({v},{a},{b}) is negative"));
        }
        if v >= n || a >= m || b >= m || !e.prefers(v, a, b) {
            violations.push(format!("y_delta({v},{a},{b}) has no matching consistency constraint"));
            continue;
        }
        column[v][a] += value;
        column[v][b] -= value;
    }
    for (&(v, u, a, b), value) in &y.triangle {
        if value.is_negative() {
            violations.push(format!("y_triangle({v},{u},{a},{b}) is negative"));
        }
        if v >= n || u >= n || a >= m || b >= m {
            violations.push(format!("y_triangle({v},{u},{a},{b}) is out of range"));
            continue;
        }
        column[v][a] += value;
        column[u][a] -= value;
        column[u][b] -= value;
        column[v][b] -= value;
    }
    let mut voter_lhs = Vec::with_capacity(n);
    let mut residuals = BTreeMap::new();
    for (v, col) in column.iter().enumerate() {
        let lhs = w.get(cstar) - &col[cstar];
        if lhs > y.alpha {
            violations.push(format!(
                "voter {v}: left-hand side {} exceeds alpha = {}",
                format_ratio(&lhs),
                format_ratio(&y.alpha)
            ));
        }
        voter_lhs.push(lhs);
        for c in (0..m).filter(|&c| c != cstar) {
            let residual = w.get(c) - &col[c];
            if residual.is_positive() {
                violations.push(format!("({v},{c}): residual {} is positive", format_ratio(&residual)));
            }
            residuals.insert((v, c), residual);
        }
    }
    DualReport {
        voter_lhs,
        residuals,
        objective: y.alpha.clone(),
        violations,
    }
}

/// Reads a dual solution off a verified flow: preference flow gives `y^δ`,
/// sideways flow `(v,c) → (v',c)` gives `y^Δ(v, v', c, c*)`, and `α = cost(g)`.
pub fn dual_from_flow(
    net: &FlowNetwork,
    g: &FlowAssignment,
    w: &WeightVector,
    cstar: Candidate,
) -> Result<(DualSolution, DualReport), CertifyError> {
    let costs = verify_flow(net, g, w, cstar)?;
    let mut y = DualSolution {
        alpha: costs.cost,
        consistency: BTreeMap::new(),
        triangle: BTreeMap::new(),
    };
    for (&(from, to), amount) in &g.edges {
        if amount.is_zero() {
            continue;
        }
        if net.is_preference_edge(from, to) {
            y.consistency.insert((from.0, from.1, to.1), amount.clone());
        } else {
            y.triangle.insert((from.0, to.0, from.1, cstar), amount.clone());
        }
    }
    let report = check_dual(net, w, cstar, &y);
    if !report.is_feasible() {
        return Err(CertifyError::DualInfeasible(report.violations.join("; ")));
    }
    Ok((y, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::flow::construct_flow;
    use crate::certify::flow::tests::{four_voters_flow_weights, FOUR_VOTERS_FLOW};
    use crate::election::tests::{arb_election, four_voters};
    use crate::election::Election;
    use crate::rules::{plurality_veto, randomized_veto};
    use crate::weights::ratio;
    use proptest::prelude::*;

    #[test]
    fn four_voters_flow_dual_has_alpha_three() {
        let net = FlowNetwork::new(&four_voters());
        let g = FlowAssignment::parse(FOUR_VOTERS_FLOW).unwrap();
        let (y, report) = dual_from_flow(&net, &g, &four_voters_flow_weights(), 3).unwrap();
        assert_eq!(y.alpha, ratio(3, 1));
        assert_eq!(report.objective, ratio(3, 1));
        // The rearranged left-hand sides are exactly the per-voter costs.
        assert_eq!(
            report.voter_lhs,
            vec![ratio(4, 3), ratio(3, 1), ratio(8, 3), ratio(1, 1)]
        );
        assert!(report.residuals.values().all(Zero::is_zero));
    }

    #[test]
    fn absorption_only_gives_alpha_one() {
        let e = Election::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let net = FlowNetwork::new(&e);
        let w = WeightVector::point_mass(2, 1).unwrap();
        let (y, report) = dual_from_flow(&net, &FlowAssignment::new(), &w, 1).unwrap();
        assert_eq!(y.alpha, ratio(1, 1));
        assert!(y.consistency.is_empty() && y.triangle.is_empty());
        assert!(report.is_feasible());
    }

    #[test]
    fn checker_catches_perturbations() {
        let net = FlowNetwork::new(&four_voters());
        let g = FlowAssignment::parse(FOUR_VOTERS_FLOW).unwrap();
        let (mut y, _) = dual_from_flow(&net, &g, &four_voters_flow_weights(), 3).unwrap();
        y.alpha = ratio(5, 2);
        let report = check_dual(&net, &four_voters_flow_weights(), 3, &y);
        assert_eq!(report.violations.len(), 2, "{:?}", report.violations);

        let (mut y, _) = dual_from_flow(&net, &g, &four_voters_flow_weights(), 3).unwrap();
        *y.consistency.get_mut(&(0, 0, 1)).unwrap() -= ratio(1, 3);
        assert!(!check_dual(&net, &four_voters_flow_weights(), 3, &y).is_feasible());
        y.consistency.insert((0, 3, 0), ratio(1, 1));
        assert!(check_dual(&net, &four_voters_flow_weights(), 3, &y)
            .violations
            .iter()
            .any(|v| v.contains("no matching")));
    }

    proptest! {
        #[test]
        fn constructed_flows_give_feasible_duals(e in arb_election(5, 5), k_seed in 0usize..5) {
            let n = e.num_voters();
            let k = k_seed % n;
            let order: Vec<Voter> = (0..n).rev().collect();
            let trace = plurality_veto(&e, &order).unwrap();
            let w = randomized_veto(&e, k, &order).unwrap();
            let net = FlowNetwork::new(&e);
            for cstar in 0..e.num_candidates() {
                let g = construct_flow(&e, &trace, k, cstar).unwrap();
                let (y, report) = dual_from_flow(&net, &g, &w, cstar).unwrap();
                prop_assert!(y.alpha <= ratio(3, 1));
                let costs = verify_flow(&net, &g, &w, cstar).unwrap();
                prop_assert_eq!(report.voter_lhs, costs.per_voter);
            }
        }
    }
}
