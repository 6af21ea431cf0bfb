// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `maximize c·x` subject to linear rows (`<=`, `>=`, `=`) and
//! `x >= 0`. Besides the primal optimum it reports one dual value per row,
//! `∂ value / ∂ rhs`, read off the final reduced costs.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs; repeated variables are summed.
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    /// Objective coefficients, maximized.
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    /// Feasibility and optimality tolerance.
    pub tolerance: f64,
    pub max_pivots: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            tolerance: 1e-9,
            max_pivots: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub x: Vec<f64>,
    /// Sensitivity of the optimum to each row's right-hand side.
    pub duals: Vec<f64>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex did not converge within {0} pivots")]
    IterationLimit(usize),
    #[error("variable index {index} out of range for {num_vars} variables")]
    BadVariable { index: usize, num_vars: usize },
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![0.0; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) -> usize {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self.constraints.len() - 1
    }

    pub fn solve(&self, options: &SimplexOptions) -> Result<LpSolution, LpError> {
        Tableau::build(self)?.solve(self, options)
    }
}

struct Tableau {
    rows: usize,
    /// Structural + slack/surplus + artificial columns; the rhs lives at index `cols`.
    cols: usize,
    width: usize,
    data: Vec<f64>,
    objective: Vec<f64>,
    basis: Vec<usize>,
    first_artificial: usize,
    /// Column holding `+e_i` for row `i` (slack or artificial).
    identity_col: Vec<usize>,
    /// `-1` where the row was negated to make its rhs non-negative.
    row_sign: Vec<f64>,
    pivots: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Result<Self, LpError> {
        let rows = lp.constraints.len();
        let mut relations = Vec::with_capacity(rows);
        let mut row_sign = Vec::with_capacity(rows);
        for c in &lp.constraints {
            let sign = if c.rhs < 0.0 { -1.0 } else { 1.0 };
            let relation = match (c.relation, sign < 0.0) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            relations.push(relation);
            row_sign.push(sign);
        }
        let num_slack = relations.iter().filter(|r| **r != Relation::Eq).count();
        let num_artificial = relations.iter().filter(|r| **r != Relation::Le).count();
        let first_slack = lp.num_vars;
        let first_artificial = first_slack + num_slack;
        let cols = first_artificial + num_artificial;
        let width = cols + 1;

        let mut data = vec![0.0; rows * width];
        let mut basis = vec![0; rows];
        let mut identity_col = vec![0; rows];
        let (mut next_slack, mut next_art) = (first_slack, first_artificial);
        for (i, c) in lp.constraints.iter().enumerate() {
            let row = &mut data[i * width..(i + 1) * width];
            for &(j, a) in &c.coeffs {
                if j >= lp.num_vars {
                    return Err(LpError::BadVariable {
                        index: j,
                        num_vars: lp.num_vars,
                    });
                }
                row[j] += row_sign[i] * a;
            }
            row[cols] = row_sign[i] * c.rhs;
            match relations[i] {
                Relation::Le => {
                    row[next_slack] = 1.0;
                    basis[i] = next_slack;
                    identity_col[i] = next_slack;
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -1.0;
                    next_slack += 1;
                    row[next_art] = 1.0;
                    basis[i] = next_art;
                    identity_col[i] = next_art;
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = 1.0;
                    basis[i] = next_art;
                    identity_col[i] = next_art;
                    next_art += 1;
                }
            }
        }
        Ok(Tableau {
            rows,
            cols,
            width,
            data,
            objective: vec![0.0; width],
            basis,
            first_artificial,
            identity_col,
            row_sign,
            pivots: 0,
        })
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    /// Sets the objective row to `-c` and prices out the current basis.
    fn load_objective(&mut self, costs: &[f64]) {
        self.objective.iter_mut().for_each(|x| *x = 0.0);
        for (j, &c) in costs.iter().enumerate() {
            self.objective[j] = -c;
        }
        for i in 0..self.rows {
            let factor = self.objective[self.basis[i]];
            if factor != 0.0 {
                let (obj, row) = (&mut self.objective, &self.data[i * self.width..(i + 1) * self.width]);
                for (o, &r) in obj.iter_mut().zip(row) {
                    *o -= factor * r;
                }
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let width = self.width;
        let inv = 1.0 / self.data[pr * width + pc];
        for x in &mut self.data[pr * width..(pr + 1) * width] {
            *x *= inv;
        }
        self.data[pr * width + pc] = 1.0;
        let (before, rest) = self.data.split_at_mut(pr * width);
        let (pivot_row, after) = rest.split_at_mut(width);
        for row in before.chunks_exact_mut(width).chain(after.chunks_exact_mut(width)) {
            let factor = row[pc];
            if factor != 0.0 {
                for (x, &p) in row.iter_mut().zip(pivot_row.iter()) {
                    *x -= factor * p;
                }
                row[pc] = 0.0;
            }
        }
        let factor = self.objective[pc];
        if factor != 0.0 {
            for (x, &p) in self.objective.iter_mut().zip(pivot_row.iter()) {
                *x -= factor * p;
            }
            self.objective[pc] = 0.0;
        }
        self.basis[pr] = pc;
        self.pivots += 1;
    }

    /// Bland's rule iterations on the loaded objective; columns `>= allowed` never enter.
    fn optimize(&mut self, allowed: usize, options: &SimplexOptions) -> Result<(), LpError> {
        let tol = options.tolerance;
        loop {
            let Some(pc) = (0..allowed).find(|&j| self.objective[j] < -tol) else {
                return Ok(());
            };
            if self.pivots >= options.max_pivots {
                return Err(LpError::IterationLimit(options.max_pivots));
            }
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.data[i * self.width + pc];
                if a > tol {
                    let ratio = self.data[i * self.width + self.cols].max(0.0) / a;
                    let better = match leave {
                        None => true,
                        Some((best_row, best)) => {
                            ratio < best - tol || (ratio <= best + tol && self.basis[i] < self.basis[best_row])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((pr, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(pr, pc);
        }
    }

    fn solve(mut self, lp: &LinearProgram, options: &SimplexOptions) -> Result<LpSolution, LpError> {
        let tol = options.tolerance;
        if self.first_artificial < self.cols {
            let mut phase_one = vec![0.0; self.cols];
            phase_one[self.first_artificial..].iter_mut().for_each(|c| *c = -1.0);
            self.load_objective(&phase_one);
            self.optimize(self.cols, options)?;
            if self.objective[self.cols] < -tol.max(1e-7) {
                return Err(LpError::Infeasible);
            }
            // Drive zero-level artificials out of the basis where possible.
            for i in 0..self.rows {
                if self.basis[i] >= self.first_artificial {
                    let row = self.row(i);
                    if let Some(j) = (0..self.first_artificial).find(|&j| row[j].abs() > tol) {
                        self.pivot(i, j);
                    }
                }
            }
        }
        let mut costs = vec![0.0; self.cols];
        costs[..lp.num_vars].copy_from_slice(&lp.objective);
        self.load_objective(&costs);
        self.optimize(self.first_artificial, options)?;

        let mut x = vec![0.0; lp.num_vars];
        for i in 0..self.rows {
            if self.basis[i] < lp.num_vars {
                x[self.basis[i]] = self.data[i * self.width + self.cols];
            }
        }
        let duals = (0..self.rows)
            .map(|i| self.row_sign[i] * self.objective[self.identity_col[i]])
            .collect();
        Ok(LpSolution {
            value: self.objective[self.cols],
            x,
            duals,
            pivots: self.pivots,
        })
    }
}
