// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Voter-to-candidate distance matrices.

use std::fmt::Write as _;

use thiserror::Error;

use crate::election::{Candidate, Election, Voter};

/// Default slack for the triangle and consistency validators.
pub const METRIC_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("expected a {rows}x{cols} matrix, got {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("d({voter},{candidate}) = {value} is negative or not finite")]
    BadEntry {
        voter: Voter,
        candidate: Candidate,
        value: f64,
    },
    #[error("triangle inequality fails: d({v},{c}) = {lhs} > d({v},{c2}) + d({v2},{c2}) + d({v2},{c}) = {rhs}")]
    Triangle {
        v: Voter,
        v2: Voter,
        c: Candidate,
        c2: Candidate,
        lhs: f64,
        rhs: f64,
    },
    #[error("voter {voter} ranks {better} above {worse} but d = {d_better} > {d_worse}")]
    Inconsistent {
        voter: Voter,
        better: Candidate,
        worse: Candidate,
        d_better: f64,
        d_worse: f64,
    },
    #[error("metric is {rows}x{cols} but the election is {n}x{m}")]
    ElectionShape {
        rows: usize,
        cols: usize,
        n: usize,
        m: usize,
    },
    #[error("CSV line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

/// Distances `d(v, c)` between voters and candidates; row = voter.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    num_voters: usize,
    num_candidates: usize,
    distances: Vec<f64>,
}

impl Metric {
    pub fn new(num_voters: usize, num_candidates: usize, distances: Vec<f64>) -> Result<Self, MetricError> {
        if distances.len() != num_voters * num_candidates || num_voters == 0 || num_candidates == 0 {
            return Err(MetricError::Shape {
                rows: num_voters,
                cols: num_candidates,
                len: distances.len(),
            });
        }
        for (i, &value) in distances.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(MetricError::BadEntry {
                    voter: i / num_candidates,
                    candidate: i % num_candidates,
                    value,
                });
            }
        }
        Ok(Metric {
            num_voters,
            num_candidates,
            distances,
        })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(MetricError::Shape {
                rows: n,
                cols: m,
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn num_voters(&self) -> usize {
        self.num_voters
    }

    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    pub fn get(&self, v: Voter, c: Candidate) -> f64 {
        self.distances[v * self.num_candidates + c]
    }

    pub fn row(&self, v: Voter) -> &[f64] {
        &self.distances[v * self.num_candidates..(v + 1) * self.num_candidates]
    }

    /// Social cost `Σ_v d(v, c)`.
    pub fn cost(&self, c: Candidate) -> f64 {
        (0..self.num_voters).map(|v| self.get(v, c)).sum()
    }

    /// Expected social cost of a winner distribution.
    pub fn expected_cost(&self, w: &[f64]) -> f64 {
        w.iter().enumerate().map(|(c, &p)| p * self.cost(c)).sum()
    }

    /// A candidate of minimum social cost (lowest index on ties) and that cost.
    pub fn optimum(&self) -> (Candidate, f64) {
        (0..self.num_candidates)
            .map(|c| (c, self.cost(c)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }

    /// `d(v,c) <= d(v,c') + d(v',c') + d(v',c)` for all voters and candidates.
    pub fn check_triangle(&self, tolerance: f64) -> Result<(), MetricError> {
        for v in 0..self.num_voters {
            for v2 in 0..self.num_voters {
                for c in 0..self.num_candidates {
                    let lhs = self.get(v, c);
                    for c2 in 0..self.num_candidates {
                        let rhs = self.get(v, c2) + self.get(v2, c2) + self.get(v2, c);
                        if lhs > rhs + tolerance {
                            return Err(MetricError::Triangle { v, v2, c, c2, lhs, rhs });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every voter is weakly closer to candidates she ranks higher.
    pub fn check_consistency(&self, e: &Election, tolerance: f64) -> Result<(), MetricError> {
        if e.num_voters() != self.num_voters || e.num_candidates() != self.num_candidates {
            return Err(MetricError::ElectionShape {
                rows: self.num_voters,
                cols: self.num_candidates,
                n: e.num_voters(),
                m: e.num_candidates(),
            });
        }
        for v in 0..self.num_voters {
            for pair in e.ranking(v).windows(2) {
                let (better, worse) = (pair[0], pair[1]);
                let (d_better, d_worse) = (self.get(v, better), self.get(v, worse));
                if d_better > d_worse + tolerance {
                    return Err(MetricError::Inconsistent {
                        voter: v,
                        better,
                        worse,
                        d_better,
                        d_worse,
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether every distance is strictly positive (a metric rather than a pseudo-metric witness).
    pub fn is_strictly_positive(&self) -> bool {
        self.distances.iter().all(|&d| d > 0.0)
    }

    /// One CSV row per voter, one column per candidate.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for v in 0..self.num_voters {
            for (c, d) in self.row(v).iter().enumerate() {
                if c > 0 {
                    out.push(',');
                }
                write!(out, "{d}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, MetricError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| MetricError::Csv {
                    line: i + 1,
                    reason: e.to_string(),
                })?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validators_accept_pseudo_metrics() {
        let e = Election::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let d = Metric::from_rows(vec![vec![1.0, 1.0], vec![2.0, 0.0]]).unwrap();
        d.check_triangle(METRIC_TOLERANCE).unwrap();
        d.check_consistency(&e, METRIC_TOLERANCE).unwrap();
        assert!(!d.is_strictly_positive());
        assert_eq!(d.cost(0), 3.0);
        assert_eq!(d.optimum(), (1, 1.0));
    }

    #[test]
    fn validators_report_violations() {
        let e = Election::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let d = Metric::from_rows(vec![vec![5.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            d.check_triangle(METRIC_TOLERANCE),
            Err(MetricError::Triangle { v: 0, c: 0, .. })
        ));
        assert!(matches!(
            d.check_consistency(&e, METRIC_TOLERANCE),
            Err(MetricError::Inconsistent {
                voter: 0,
                better: 0,
                worse: 1,
                ..
            })
        ));
        assert!(Metric::new(1, 2, vec![0.0, -1.0]).is_err());
        assert!(Metric::new(1, 2, vec![0.0]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let d = Metric::from_rows(vec![vec![0.5, 1.25], vec![2.0, 0.0]]).unwrap();
        assert_eq!(d.to_csv(), "0.5,1.25\n2,0\n");
        assert_eq!(Metric::from_csv(&d.to_csv()).unwrap(), d);
        assert!(matches!(
            Metric::from_csv("1,x\n"),
            Err(MetricError::Csv { line: 1, .. })
        ));
    }
}
