// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! Monte-Carlo experiments on seeded Euclidean elections.
//!
//! Configs are flat `key = value` files:
//!
//! ```text
//! # comment
//! rules = plurality_veto, randomized_veto(2), random_dictatorship, committee_select(3,2)
//! instances = 1000
//! voters = 15
//! candidates = 5
//! dimension = 2
//! distribution = gaussian
//! seed = 7
//! ```

use std::fmt::{self, Write as _};
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;

use crate::bench::generate::{generate_euclidean, Distribution};
use crate::bench::BenchError;
use crate::metric::Metric;
use crate::rules::{
    committee_select, default_order, plurality_veto, q_social_cost, random_dictatorship, randomized_veto, Committee,
};

pub const CSV_HEADER: &str = "seed,rule,winner,cost,opt_cost,ratio";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSpec {
    PluralityVeto,
    RandomizedVeto(usize),
    RandomDictatorship,
    /// Committee of size `k` judged by q-cost.
    Committee {
        k: usize,
        q: usize,
    },
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::PluralityVeto => write!(f, "plurality_veto"),
            RuleSpec::RandomizedVeto(k) => write!(f, "randomized_veto({k})"),
            RuleSpec::RandomDictatorship => write!(f, "random_dictatorship"),
            RuleSpec::Committee { k, q } => write!(f, "committee_select({k} {q})"),
        }
    }
}

impl FromStr for RuleSpec {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let unknown = || BenchError::UnknownRule(s.to_string());
        let (name, args) = match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(unknown)?;
                let args = inner
                    .split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| unknown()))
                    .collect::<Result<Vec<_>, _>>()?;
                (name.trim(), args)
            }
            None => (s, Vec::new()),
        };
        match (name, args.as_slice()) {
            ("plurality_veto", []) => Ok(RuleSpec::PluralityVeto),
            ("random_dictatorship", []) => Ok(RuleSpec::RandomDictatorship),
            ("randomized_veto", [k]) => Ok(RuleSpec::RandomizedVeto(*k)),
            ("committee_select", [k]) => Ok(RuleSpec::Committee { k: *k, q: *k }),
            ("committee_select", [k, q]) => Ok(RuleSpec::Committee { k: *k, q: *q }),
            _ => Err(unknown()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub rules: Vec<RuleSpec>,
    pub instances: usize,
    pub voters: usize,
    pub candidates: usize,
    pub dimension: usize,
    pub distribution: Distribution,
    /// Instance `i` is generated from seed `seed + i`.
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            rules: vec![RuleSpec::PluralityVeto],
            instances: 100,
            voters: 15,
            candidates: 5,
            dimension: 2,
            distribution: Distribution::Gaussian,
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut config = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let bad = |reason: String| BenchError::Config(format!("line {}: {reason}", i + 1));
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| bad("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            let number = |v: &str| v.parse::<usize>().map_err(|_| bad(format!("`{v}` is not a count")));
            match key {
                "rules" => {
                    // Commas separate rules, except inside parentheses.
                    let mut rules = Vec::new();
                    let (mut depth, mut start) = (0usize, 0usize);
                    for (j, ch) in value.char_indices() {
                        match ch {
                            '(' => depth += 1,
                            ')' => depth = depth.saturating_sub(1),
                            ',' if depth == 0 => {
                                rules.push(value[start..j].parse()?);
                                start = j + 1;
                            }
                            _ => {}
                        }
                    }
                    rules.push(value[start..].parse()?);
                    config.rules = rules;
                }
                "instances" => config.instances = number(value)?,
                "voters" | "n" => config.voters = number(value)?,
                "candidates" | "m" => config.candidates = number(value)?,
                "dimension" | "D" => config.dimension = number(value)?,
                "distribution" => config.distribution = value.parse()?,
                "seed" => config.seed = value.parse().map_err(|_| bad(format!("`{value}` is not a seed")))?,
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let (n, m) = (self.voters, self.candidates);
        if n == 0 || m == 0 || self.dimension == 0 {
            return Err(BenchError::Config(
                "voters, candidates and dimension must be positive".into(),
            ));
        }
        if self.rules.is_empty() {
            return Err(BenchError::Config("no rules listed".into()));
        }
        for rule in &self.rules {
            match *rule {
                RuleSpec::RandomizedVeto(k) if k >= n => {
                    return Err(BenchError::Config(format!("{rule}: k must be below {n} voters")));
                }
                RuleSpec::Committee { k, q } if k == 0 || k > m || q > k || 2 * q <= k => {
                    return Err(BenchError::Config(format!("{rule}: need 1 <= k <= m and k/2 < q <= k")));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub seed: u64,
    pub rule: String,
    /// Winner index, distribution as fractions, or committee `{a b}`.
    pub winner: String,
    /// Realized cost, or exact expected cost for randomized rules.
    pub cost: f64,
    /// Hindsight optimum over candidates (or committees).
    pub opt_cost: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleSummary {
    pub rule: String,
    pub instances: usize,
    pub mean_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    /// In instance order, then in config rule order.
    pub records: Vec<ExperimentRecord>,
    pub summaries: Vec<RuleSummary>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.seed, r.rule, r.winner, r.cost, r.opt_cost, r.ratio
            )
            .unwrap();
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::from("rule instances mean_ratio max_ratio\n");
        for s in &self.summaries {
            writeln!(out, "{} {} {:.6} {:.6}", s.rule, s.instances, s.mean_ratio, s.max_ratio).unwrap();
        }
        out
    }
}

fn ratio(cost: f64, opt: f64) -> f64 {
    if opt > 0.0 {
        cost / opt
    } else if cost > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

fn optimal_committee_cost(d: &Metric, k: usize, q: usize) -> f64 {
    (0..d.num_candidates())
        .combinations(k)
        .map(|members| {
            let committee = Committee::new(members, d.num_candidates()).expect("distinct members");
            q_social_cost(&committee, d, q).expect("q <= k")
        })
        .fold(f64::INFINITY, f64::min)
}

fn run_instance(config: &ExperimentConfig, seed: u64) -> Result<Vec<ExperimentRecord>, BenchError> {
    let (e, d) = generate_euclidean(
        config.voters,
        config.candidates,
        config.dimension,
        config.distribution,
        seed,
    )?;
    let order = default_order(&e);
    let (_, opt) = d.optimum();
    let mut records = Vec::with_capacity(config.rules.len());
    for rule in &config.rules {
        let (winner, cost, opt_cost) = match *rule {
            RuleSpec::PluralityVeto => {
                let c = plurality_veto(&e, &order)?.winner;
                (c.to_string(), d.cost(c), opt)
            }
            RuleSpec::RandomizedVeto(k) => {
                let w = randomized_veto(&e, k, &order)?;
                (w.to_string(), d.expected_cost(&w.to_f64()), opt)
            }
            RuleSpec::RandomDictatorship => {
                let w = random_dictatorship(&e);
                (w.to_string(), d.expected_cost(&w.to_f64()), opt)
            }
            RuleSpec::Committee { k, q } => {
                let committee = committee_select(&e, k, q)?;
                (
                    committee.to_string(),
                    q_social_cost(&committee, &d, q)?,
                    optimal_committee_cost(&d, k, q),
                )
            }
        };
        records.push(ExperimentRecord {
            seed,
            rule: rule.to_string(),
            winner,
            cost,
            opt_cost,
            ratio: ratio(cost, opt_cost),
        });
    }
    Ok(records)
}

/// Runs every instance (in parallel) and assembles the report in instance order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, BenchError> {
    config.validate()?;
    let per_instance: Vec<Vec<ExperimentRecord>> = (0..config.instances)
        .into_par_iter()
        .map(|i| run_instance(config, config.seed.wrapping_add(i as u64)))
        .collect::<Result<_, _>>()?;
    let records: Vec<ExperimentRecord> = per_instance.into_iter().flatten().collect();
    let summaries = config
        .rules
        .iter()
        .map(|rule| {
            let name = rule.to_string();
            let ratios: Vec<f64> = records.iter().filter(|r| r.rule == name).map(|r| r.ratio).collect();
            RuleSummary {
                instances: ratios.len(),
                mean_ratio: if ratios.is_empty() {
                    0.0
                } else {
                    ratios.iter().sum::<f64>() / ratios.len() as f64
                },
                max_ratio: ratios.iter().copied().fold(0.0, f64::max),
                rule: name,
            }
        })
        .collect();
    Ok(ExperimentReport { records, summaries })
}
