// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Worst-case distortion of a winner distribution as a linear program.
//!
//! The adversary picks distances `x_{c,v}` consistent with the ballots and
//! satisfying the triangle inequality, normalized so that `c*` has social
//! cost 1, and maximizes the expected cost `Σ_c w_c Σ_v x_{c,v}`. That
//! program has `n·m` variables but on the order of `n²m²` rows, so it is
//! solved through its dual (`n·m` rows); the optimal primal distances are
//! recovered from the dual's row sensitivities.

use thiserror::Error;

use crate::election::{Candidate, Election};
use crate::metric::Metric;
use crate::simplex::{LinearProgram, LpError, Relation, SimplexOptions};
use crate::weights::WeightVector;

/// Default cap on `n·m`, the number of distance variables.
pub const MAX_LP_VARIABLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistortionError {
    #[error("{n} voters x {m} candidates exceeds the LP cap of {cap} variables")]
    TooLarge { n: usize, m: usize, cap: usize },
    #[error("w has {found} entries for {m} candidates")]
    Shape { found: usize, m: usize },
    #[error("candidate {0} is out of range")]
    UnknownCandidate(Candidate),
    #[error("distortion LP is unbounded, which valid inputs cannot produce")]
    Unbounded,
    #[error("LP solver failed: {0}")]
    Solver(LpError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Distortion {
    /// Maximum expected cost with `cost(c*) = 1`.
    pub value: f64,
    pub cstar: Candidate,
    /// Optimal distances; `cost(c*) = 1` up to solver tolerance.
    pub witness: Metric,
    pub pivots: usize,
}

fn var(e: &Election, c: Candidate, v: usize) -> usize {
    v * e.num_candidates() + c
}

fn check(e: &Election, w: &WeightVector, cstar: Candidate) -> Result<(), DistortionError> {
    let (n, m) = (e.num_voters(), e.num_candidates());
    if n * m > MAX_LP_VARIABLES {
        return Err(DistortionError::TooLarge {
            n,
            m,
            cap: MAX_LP_VARIABLES,
        });
    }
    if w.len() != m {
        return Err(DistortionError::Shape { found: w.len(), m });
    }
    if cstar >= m {
        return Err(DistortionError::UnknownCandidate(cstar));
    }
    Ok(())
}

/// The adversary's program verbatim: variable `v·m + c` is `x_{c,v}`, and
/// every quadruple `(c, c', v, v')` contributes a triangle row.
pub fn primal_program(e: &Election, w: &WeightVector, cstar: Candidate) -> LinearProgram {
    let (n, m) = (e.num_voters(), e.num_candidates());
    let mut lp = LinearProgram::new(n * m);
    for v in 0..n {
        for c in 0..m {
            lp.objective[var(e, c, v)] = w.to_f64()[c];
        }
    }
    for c in 0..m {
        for c2 in 0..m {
            for v in 0..n {
                for v2 in 0..n {
                    let row = vec![
                        (var(e, c, v), 1.0),
                        (var(e, c, v2), -1.0),
                        (var(e, c2, v2), -1.0),
                        (var(e, c2, v), -1.0),
                    ];
                    lp.add(row, Relation::Le, 0.0);
                }
            }
        }
    }
    for v in 0..n {
        let ranking = e.ranking(v);
        for (i, &a) in ranking.iter().enumerate() {
            for &b in &ranking[i + 1..] {
                lp.add(vec![(var(e, a, v), 1.0), (var(e, b, v), -1.0)], Relation::Le, 0.0);
            }
        }
    }
    lp.add((0..n).map(|v| (var(e, cstar, v), 1.0)).collect(), Relation::Eq, 1.0);
    lp
}

/// The dual, written as `maximize α⁻ − α⁺` so the solver's row `v·m + c`
/// is the dual constraint of `x_{c,v}`. Triangle rows with `c = c'` or
/// `v = v'` are implied by `x ≥ 0` and get no multiplier.
pub fn dual_program(e: &Election, w: &WeightVector, cstar: Candidate) -> LinearProgram {
    let (n, m) = (e.num_voters(), e.num_candidates());
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n * m];
    let mut num_vars = 2;
    for v in 0..n {
        let ranking = e.ranking(v);
        for (i, &a) in ranking.iter().enumerate() {
            for &b in &ranking[i + 1..] {
                columns[var(e, a, v)].push((num_vars, 1.0));
                columns[var(e, b, v)].push((num_vars, -1.0));
                num_vars += 1;
            }
        }
    }
    for v in 0..n {
        for v2 in (0..n).filter(|&u| u != v) {
            for c in 0..m {
                for c2 in (0..m).filter(|&d| d != c) {
                    columns[var(e, c, v)].push((num_vars, 1.0));
                    columns[var(e, c, v2)].push((num_vars, -1.0));
                    columns[var(e, c2, v2)].push((num_vars, -1.0));
                    columns[var(e, c2, v)].push((num_vars, -1.0));
                    num_vars += 1;
                }
            }
        }
    }
    let mut lp = LinearProgram::new(num_vars);
    lp.objective[0] = -1.0;
    lp.objective[1] = 1.0;
    let weights = w.to_f64();
    for v in 0..n {
        for c in 0..m {
            let mut row = std::mem::take(&mut columns[var(e, c, v)]);
            if c == cstar {
                row.extend([(0, 1.0), (1, -1.0)]);
            }
            lp.add(row, Relation::Ge, weights[c]);
        }
    }
    lp
}

/// Worst-case expected cost of `w` when `c*` is normalized to cost 1.
pub fn worst_case_distortion(e: &Election, w: &WeightVector, cstar: Candidate) -> Result<Distortion, DistortionError> {
    worst_case_distortion_with(e, w, cstar, &SimplexOptions::default())
}

pub fn worst_case_distortion_with(
    e: &Election,
    w: &WeightVector,
    cstar: Candidate,
    options: &SimplexOptions,
) -> Result<Distortion, DistortionError> {
    check(e, w, cstar)?;
    let solution = dual_program(e, w, cstar).solve(options).map_err(|err| match err {
        LpError::Infeasible => DistortionError::Unbounded,
        other => DistortionError::Solver(other),
    })?;
    // Raising the right-hand side w_c of row (c, v) lowers the dual
    // objective by x_{c,v}.
    let distances: Vec<f64> = solution.duals.iter().map(|&y| (-y).max(0.0)).collect();
    let witness = Metric::new(e.num_voters(), e.num_candidates(), distances).expect("non-negative, finite");
    Ok(Distortion {
        value: -solution.value,
        cstar,
        witness,
        pivots: solution.pivots,
    })
}

/// Distortion of `w`: the worst case over every choice of `c*`.
pub fn distortion(e: &Election, w: &WeightVector) -> Result<Distortion, DistortionError> {
    let mut worst: Option<Distortion> = None;
    for cstar in 0..e.num_candidates() {
        let d = worst_case_distortion(e, w, cstar)?;
        if worst.as_ref().is_none_or(|best| d.value > best.value) {
            worst = Some(d);
        }
    }
    Ok(worst.expect("m >= 1"))
}
