// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Certificates for the distortion guarantees: domination graphs and their
//! matchings, flows on the voter-candidate grid, LP duals built from flows,
//! and the distortion LP itself.

pub mod domination;
pub mod dual;
pub mod flow;
pub mod lp;
pub mod maxflow;

use thiserror::Error;

use crate::election::Candidate;

pub use domination::{
    check_fractional_matching, domination_graph, fractional_perfect_matching, has_perfect_matching, maximum_matching,
    pq_domination_graph, verify_veto_matching, DominationGraph, FractionalMatching, PQDominationGraph,
};
pub use dual::{check_dual, dual_from_flow, DualReport, DualSolution};
pub use flow::{construct_flow, verify_flow, FlowAssignment, FlowCosts, FlowNetwork, Node};
pub use lp::{distortion, dual_program, primal_program, worst_case_distortion, Distortion, DistortionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("fractional matching violated: {0}")]
    MatchingViolation(String),
    #[error("flow uses ({}, {}) -> ({}, {}), which is not an edge of the network", .from.0, .from.1, .to.0, .to.1)]
    NonexistentEdge { from: Node, to: Node },
    #[error("flow on ({}, {}) -> ({}, {}) is negative", .from.0, .from.1, .to.0, .to.1)]
    NegativeFlow { from: Node, to: Node },
    #[error("flow is not conserved at ({}, {}): {excess} units in excess", .node.0, .node.1)]
    Conservation { node: Node, excess: String },
    #[error("node ({}, {}) emits {deficit} units more than it receives", .node.0, .node.1)]
    NegativeAbsorption { node: Node, deficit: String },
    #[error("candidate {cstar} out of range for {m} candidates")]
    UnknownCandidate { cstar: Candidate, m: usize },
    #[error("trace does not match a run of the rule on this election: {0}")]
    InconsistentTrace(String),
    #[error("k = {k} rounds is out of range for {n} voters")]
    RoundsOutOfRange { k: usize, n: usize },
    #[error("flow line {line}: {reason}")]
    FlowParse { line: usize, reason: String },
    #[error("dual infeasible: {0}")]
    DualInfeasible(String),
}
