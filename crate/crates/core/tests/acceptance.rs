// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Runs without the libtest harness so the
//! PASS/FAIL line of every criterion is always printed; exits non-zero if
//! any criterion fails.

use std::collections::btree_map::{BTreeMap, Entry};
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plurality_veto::bench::{
    generate_euclidean, is_hull_vertex, peeling_rounds, peer_selection, random_peer_points, Distribution, Point,
};
use plurality_veto::certify::{
    check_fractional_matching, construct_flow, domination_graph, dual_from_flow, fractional_perfect_matching,
    has_perfect_matching, pq_domination_graph, primal_program, verify_flow, worst_case_distortion, DistortionError,
    FlowAssignment, FlowNetwork,
};
use plurality_veto::rules::{
    committee_select, fractional_veto, plurality_veto, q_social_cost, randomized_veto, Committee, VoterPolicy,
};
use plurality_veto::simplex::SimplexOptions;
use plurality_veto::weights::ratio;
use plurality_veto::{Candidate, Election, Ratio, Voter, WeightVector};

const TOL: f64 = 1e-6;

type Outcome = Result<String, String>;

fn random_election(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Election {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=max_m);
    let rankings = (0..n)
        .map(|_| {
            let mut r: Vec<Candidate> = (0..m).collect();
            r.shuffle(rng);
            r
        })
        .collect();
    Election::new(m, rankings).unwrap()
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> Vec<Voter> {
    let mut order: Vec<Voter> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Random rational weights on `len` entries, some of them zero.
fn random_weights(rng: &mut ChaCha8Rng, len: usize) -> WeightVector {
    loop {
        let counts: Vec<usize> = (0..len)
            .map(|_| {
                if rng.random_bool(0.25) {
                    0
                } else {
                    rng.random_range(1..=7)
                }
            })
            .collect();
        if counts.iter().any(|&c| c > 0) {
            return WeightVector::from_counts(&counts).unwrap();
        }
    }
}

fn lp_value(e: &Election, w: &WeightVector, cstar: Candidate) -> Result<f64, String> {
    match worst_case_distortion(e, w, cstar) {
        Ok(d) => Ok(d.value),
        Err(DistortionError::Unbounded) => Ok(f64::INFINITY),
        Err(err) => Err(format!("LP failed: {err}")),
    }
}

/// Every profile with `n` voters over `m` candidates.
fn all_profiles(n: usize, m: usize) -> impl Iterator<Item = Election> {
    let perms: Vec<Vec<Candidate>> = (0..m).permutations(m).collect();
    (0..n)
        .map(|_| perms.clone())
        .multi_cartesian_product()
        .map(move |rankings| Election::new(m, rankings).unwrap())
}

fn criterion_1() -> Outcome {
    let (mut profiles, mut runs, mut lps) = (0usize, 0usize, 0usize);
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        for m in 1..=3 {
            for e in all_profiles(n, m) {
                profiles += 1;
                // The LP depends only on (profile, winner).
                let mut cache: BTreeMap<Candidate, f64> = BTreeMap::new();
                for order in (0..n).permutations(n) {
                    runs += 1;
                    let winner = plurality_veto(&e, &order).map_err(|err| err.to_string())?.winner;
                    if has_perfect_matching(&domination_graph(&e, winner)).is_none() {
                        return Err(format!(
                            "winner {winner} of {:?} under {order:?} has no perfect matching",
                            e.rankings()
                        ));
                    }
                    let value = match cache.entry(winner) {
                        Entry::Occupied(hit) => *hit.get(),
                        Entry::Vacant(slot) => {
                            let w = WeightVector::point_mass(m, winner).unwrap();
                            let mut max = 0.0f64;
                            for cstar in 0..m {
                                lps += 1;
                                max = max.max(lp_value(&e, &w, cstar)?);
                            }
                            *slot.insert(max)
                        }
                    };
                    worst = worst.max(value);
                    if value > 3.0 + TOL {
                        return Err(format!("winner {winner} of {:?} has distortion {value}", e.rankings()));
                    }
                }
            }
        }
    }
    Ok(format!(
        "{profiles} profiles, {runs} runs, {lps} LPs, max distortion {worst:.9}"
    ))
}

fn criterion_2() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/four_voters.flow");
    let g =
        FlowAssignment::parse(&std::fs::read_to_string(path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let e = Election::parse(include_str!("data/four_voters.ballots")).map_err(|e| e.to_string())?;
    let w = WeightVector::new(vec![ratio(2, 3), ratio(1, 3), ratio(0, 1), ratio(0, 1)]).unwrap();
    if randomized_veto(&e, 1, &[0, 1, 2, 3]).map_err(|e| e.to_string())? != w {
        return Err("one-round randomized veto does not give w".into());
    }
    let costs = verify_flow(&FlowNetwork::new(&e), &g, &w, 3).map_err(|e| e.to_string())?;
    let expected = vec![ratio(4, 3), ratio(3, 1), ratio(8, 3), ratio(1, 1)];
    if costs.per_voter != expected || costs.cost != ratio(3, 1) {
        return Err(format!("costs {:?}, overall {}", costs.per_voter, costs.cost));
    }
    Ok("per-voter costs 4/3 3 8/3 1, overall 3".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut max_steps = 0;
    for case in 0..1000 {
        let e = random_election(&mut rng, 6, 6);
        let (n, m) = (e.num_voters(), e.num_candidates());
        let p = random_weights(&mut rng, n);
        let q = random_weights(&mut rng, m);
        let policy = if case % 2 == 0 {
            VoterPolicy::LowestIndex
        } else {
            VoterPolicy::Order(random_order(&mut rng, n))
        };
        let trace = fractional_veto(&e, &p, &q, &policy).map_err(|err| err.to_string())?;
        if trace.steps.len() > n + m {
            return Err(format!(
                "case {case}: {} steps for n + m = {}",
                trace.steps.len(),
                n + m
            ));
        }
        max_steps = max_steps.max(trace.steps.len());
        let g = pq_domination_graph(&e, &p, &q, trace.winner).map_err(|err| err.to_string())?;
        check_fractional_matching(&g, &trace.matching).map_err(|err| format!("case {case}: {err}"))?;
        if fractional_perfect_matching(&g).is_none() {
            return Err(format!("case {case}: max-flow finds no fractional perfect matching"));
        }
    }
    Ok(format!("1000 cases, at most {max_steps} steps"))
}

/// Results shared by criteria 4, 5 and 6.
struct RandomizedSuite {
    flows: usize,
    worst_flow_cost: Ratio,
    worst_lp: f64,
    /// (instance, n, LP distortion) for k = 0.
    dictatorship: Vec<(usize, usize, f64)>,
    /// max over flows of LP(w, c*) - cost(g).
    worst_duality_gap: f64,
    primal_checks: usize,
    failure: Option<String>,
}

fn randomized_suite() -> RandomizedSuite {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut suite = RandomizedSuite {
        flows: 0,
        worst_flow_cost: Ratio::zero(),
        worst_lp: 0.0,
        dictatorship: Vec::new(),
        worst_duality_gap: f64::NEG_INFINITY,
        primal_checks: 0,
        failure: None,
    };
    let options = SimplexOptions::default();
    for case in 0..1000 {
        let e = random_election(&mut rng, 6, 5);
        let (n, m) = (e.num_voters(), e.num_candidates());
        let order = random_order(&mut rng, n);
        let trace = plurality_veto(&e, &order).unwrap();
        let net = FlowNetwork::new(&e);
        let mut fail = |why: String| {
            suite
                .failure
                .get_or_insert(format!("case {case} {:?}: {why}", e.rankings()));
        };
        for k in 0..n {
            let w = randomized_veto(&e, k, &order).unwrap();
            let mut lp_max = 0.0f64;
            for cstar in 0..m {
                let g = match construct_flow(&e, &trace, k, cstar) {
                    Ok(g) => g,
                    Err(err) => {
                        fail(format!("k={k} c*={cstar}: construct_flow: {err}"));
                        continue;
                    }
                };
                let costs = match verify_flow(&net, &g, &w, cstar) {
                    Ok(costs) => costs,
                    Err(err) => {
                        fail(format!("k={k} c*={cstar}: verify_flow: {err}"));
                        continue;
                    }
                };
                suite.flows += 1;
                if costs.cost > ratio(3, 1) {
                    fail(format!("k={k} c*={cstar}: flow cost {}", costs.cost));
                }
                if costs.cost > suite.worst_flow_cost {
                    suite.worst_flow_cost = costs.cost.clone();
                }
                match dual_from_flow(&net, &g, &w, cstar) {
                    Ok((y, report))
                        if report.is_feasible() && report.objective == costs.cost && y.alpha == costs.cost => {}
                    Ok((_, report)) => fail(format!("k={k} c*={cstar}: dual {:?}", report.violations)),
                    Err(err) => fail(format!("k={k} c*={cstar}: dual: {err}")),
                }
                let value = match lp_value(&e, &w, cstar) {
                    Ok(v) => v,
                    Err(err) => {
                        fail(err);
                        continue;
                    }
                };
                let cost = plurality_veto::weights::ratio_to_f64(&costs.cost);
                suite.worst_duality_gap = suite.worst_duality_gap.max(value - cost);
                if value > cost + TOL {
                    fail(format!("k={k} c*={cstar}: LP value {value} exceeds flow cost {cost}"));
                }
                // The literal adversary program, on the smaller instances.
                if n * m <= 12 {
                    suite.primal_checks += 1;
                    match primal_program(&e, &w, cstar).solve(&options) {
                        Ok(sol) if (sol.value - value).abs() <= TOL && sol.value <= cost + TOL => {}
                        Ok(sol) => fail(format!("k={k} c*={cstar}: primal {} vs dual route {value}", sol.value)),
                        Err(err) => fail(format!("k={k} c*={cstar}: primal: {err}")),
                    }
                }
                lp_max = lp_max.max(value);
            }
            suite.worst_lp = suite.worst_lp.max(lp_max);
            if lp_max > 3.0 + TOL {
                fail(format!("k={k}: randomized veto distortion {lp_max}"));
            }
            if k == 0 {
                suite.dictatorship.push((case, n, lp_max));
            }
        }
    }
    suite
}

fn criterion_4(suite: &RandomizedSuite) -> Outcome {
    match &suite.failure {
        Some(why) => Err(why.clone()),
        None => Ok(format!(
            "{} flows, max flow cost {}, max LP distortion {:.9}",
            suite.flows, suite.worst_flow_cost, suite.worst_lp
        )),
    }
}

fn criterion_5(suite: &RandomizedSuite) -> Outcome {
    let mut tightest = f64::INFINITY;
    for &(case, n, value) in &suite.dictatorship {
        let bound = 3.0 - 2.0 / n as f64;
        if value > bound + TOL {
            return Err(format!("case {case}: distortion {value} above 3 - 2/{n}"));
        }
        tightest = tightest.min(bound - value);
    }
    Ok(format!(
        "{} instances, smallest slack {tightest:.1e}",
        suite.dictatorship.len()
    ))
}

fn criterion_6(suite: &RandomizedSuite) -> Outcome {
    if suite.worst_duality_gap > TOL {
        return Err(format!("LP value exceeds flow cost by {}", suite.worst_duality_gap));
    }
    Ok(format!(
        "{} flows, max LP - cost(g) = {:.9}, {} literal primal solves agree",
        suite.flows, suite.worst_duality_gap, suite.primal_checks
    ))
}

/// Plain PluralityVeto over every size-k committee with full committee
/// rankings: the last vetoed committee wins.
fn exhaustive_committee(e: &Election, k: usize, q: usize) -> Vec<Candidate> {
    let committees: Vec<Vec<Candidate>> = (0..e.num_candidates()).combinations(k).collect();
    let rank = |v: Voter, members: &[Candidate]| {
        let mut pos: Vec<usize> = members
            .iter()
            .map(|&c| e.ranking(v).iter().position(|&x| x == c).unwrap())
            .collect();
        pos.sort_unstable();
        (pos[q - 1], members.to_vec())
    };
    let rankings: Vec<Vec<usize>> = (0..e.num_voters())
        .map(|v| {
            let mut order: Vec<usize> = (0..committees.len()).collect();
            order.sort_by_key(|&i| rank(v, &committees[i]));
            order
        })
        .collect();
    let mut score = vec![0usize; committees.len()];
    for r in &rankings {
        score[r[0]] += 1;
    }
    let mut last = rankings[0][0];
    for r in &rankings {
        last = *r.iter().rev().find(|&&i| score[i] > 0).unwrap();
        score[last] -= 1;
    }
    committees[last].clone()
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut covered, mut worst) = (0usize, 0.0f64);
    for case in 0..200u64 {
        let n = rng.random_range(1..=8);
        let m = rng.random_range(3..=6);
        let k = rng.random_range(2..=3);
        let dist = if case % 2 == 0 {
            Distribution::Gaussian
        } else {
            Distribution::UniformCube
        };
        let (e, d) = generate_euclidean(n, m, 2, dist, 700 + case).unwrap();
        let chosen = committee_select(&e, k, k).map_err(|err| err.to_string())?;
        let cost = q_social_cost(&chosen, &d, k).unwrap();
        let opt = (0..m)
            .combinations(k)
            .map(|c| q_social_cost(&Committee::new(c, m).unwrap(), &d, k).unwrap())
            .fold(f64::INFINITY, f64::min);
        let r = if opt > 0.0 { cost / opt } else { 1.0 };
        worst = worst.max(r);
        if cost > 3.0 * opt + TOL {
            return Err(format!("case {case}: q-cost {cost} vs optimum {opt}"));
        }
        let exhaustive = exhaustive_committee(&e, k, k);
        let in_hat = (0..n).any(|v| {
            let mut prefix = e.ranking(v)[..k].to_vec();
            prefix.sort_unstable();
            prefix == exhaustive
        });
        if in_hat {
            covered += 1;
            if chosen.members() != exhaustive.as_slice() {
                return Err(format!(
                    "case {case}: selected {chosen}, exhaustive rule picks {exhaustive:?}"
                ));
            }
        }
    }
    if covered == 0 {
        return Err("no instance had the exhaustive winner among top-k prefixes".into());
    }
    Ok(format!(
        "200 instances, max q-cost ratio {worst:.6}, {covered} exhaustive winners covered and matched"
    ))
}

fn criterion_8() -> Outcome {
    let e = Election::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
    let w = WeightVector::point_mass(2, 0).unwrap();
    let value = lp_value(&e, &w, 1)?;
    if (value - 3.0).abs() > TOL {
        return Err(format!("value {value}"));
    }
    Ok(format!("value {value:.9}"))
}

/// A point is a strict hull vertex iff the other points leave an angular
/// gap wider than a half-turn around it.
fn angular_gap_vertex(points: &[Point], subset: &[usize], target: usize) -> bool {
    let t = &points[target];
    let mut angles: Vec<f64> = subset
        .iter()
        .map(|&i| &points[i])
        .filter(|p| *p != t)
        .map(|p| (p[1] - t[1]).atan2(p[0] - t[0]))
        .collect();
    if angles.is_empty() {
        return true;
    }
    angles.sort_by(f64::total_cmp);
    let wrap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    let gap = angles.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max);
    gap > PI + 1e-12
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut rounds = 0;
    for case in 0..200u64 {
        let n = rng.random_range(2..=10);
        let dist = if case % 2 == 0 {
            Distribution::UniformCube
        } else {
            Distribution::Gaussian
        };
        let points = random_peer_points(n, 2, dist, 900 + case);
        let (e, _) = peer_selection(&points).map_err(|err| err.to_string())?;
        let order = random_order(&mut rng, n);
        let trace = plurality_veto(&e, &order).map_err(|err| err.to_string())?;
        let peeled = peeling_rounds(&points, &e, &order).map_err(|err| err.to_string())?;
        for (round, &(vetoed, on_hull)) in trace.rounds.iter().zip(&peeled) {
            rounds += 1;
            let oracle = angular_gap_vertex(&points, &round.active, vetoed);
            if oracle != is_hull_vertex(&points, &round.active, vetoed) {
                return Err(format!("case {case} round {}: hull tests disagree", round.index));
            }
            if !on_hull {
                return Err(format!("case {case} round {}: agent {vetoed} is interior", round.index));
            }
        }
    }
    Ok(format!("200 instances, {rounds} vetoes, all on the hull"))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, run: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why} ({secs:.1}s)");
            }
        }
    };
    report(1, "exhaustive PluralityVeto, n <= 4, m <= 3", &criterion_1);
    report(2, "reference (w, c*)-flow costs", &criterion_2);
    report(3, "FractionalVeto matchings", &criterion_3);
    let start = Instant::now();
    let suite = randomized_suite();
    println!(
        "(randomized suite for criteria 4-6 built in {:.1}s)",
        start.elapsed().as_secs_f64()
    );
    report(4, "k-round randomized veto flows, duals and LP", &|| {
        criterion_4(&suite)
    });
    report(5, "random dictatorship below 3 - 2/n", &|| criterion_5(&suite));
    report(6, "weak duality between flows and the LP", &|| criterion_6(&suite));
    report(7, "committee rule on Euclidean instances", &criterion_7);
    report(8, "opposed 2x2 LP value", &criterion_8);
    report(9, "peer-selection vetoes peel the hull", &criterion_9);
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
