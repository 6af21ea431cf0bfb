// Copyright 2026 The plurality-veto Authors
// SPDX-License-Identifier: Apache-2.0

//! `pveto`: run, certify and benchmark the PluralityVeto family of rules.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plurality_veto::bench::{potential_winners, run_experiment, ExperimentConfig, WinnerMode};
use plurality_veto::certify::{
    check_fractional_matching, construct_flow, distortion, domination_graph, dual_from_flow, has_perfect_matching,
    pq_domination_graph, verify_flow, verify_veto_matching, worst_case_distortion, Distortion, DistortionError,
    FlowAssignment, FlowNetwork,
};
use plurality_veto::rules::{
    committee_select_with_order, default_order, fractional_veto, plurality_veto, randomized_veto, VetoTrace,
    VoterPolicy,
};
use plurality_veto::weights::format_ratio;
use plurality_veto::{Candidate, Election, Voter, WeightVector};

#[derive(Parser)]
#[command(
    name = "pveto",
    version,
    about = "Metric-distortion voting: PluralityVeto and its certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run PluralityVeto and print the winner.
    Run(RunArgs),
    /// Print the exact winner distribution of k-round randomized veto.
    Randomize(RandomizeArgs),
    /// Check matching, flow and dual certificates; one PASS/FAIL line each.
    Certify(CertifyArgs),
    /// Worst-case distortion of a winner or distribution, by linear programming.
    Distortion(DistortionArgs),
    /// Build or verify a (w, c*)-flow and print per-voter costs.
    Flow(FlowArgs),
    /// Select a committee of size k judged by q-cost.
    Committee(CommitteeArgs),
    /// Run a Monte-Carlo experiment and write its CSV.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct OrderArgs {
    /// Ballot file.
    ballots: PathBuf,
    /// Voter order as comma-separated indices (default: file order).
    #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
    order: Option<Vec<Voter>>,
    /// Shuffle the voter order with this seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: OrderArgs,
    /// Print the round-by-round trace.
    #[arg(long)]
    trace: bool,
    /// Report every candidate that wins under some order (n <= 8).
    #[arg(long, conflicts_with_all = ["order", "seed", "trace"])]
    all_orders: bool,
    /// Write the trace to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RandomizeArgs {
    #[command(flatten)]
    input: OrderArgs,
    /// Number of veto rounds, 0 <= k <= n - 1.
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: OrderArgs,
    /// Trace file to certify (default: a fresh run).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Flow file to certify against `--weights` and `--cstar`.
    #[arg(long, requires_all = ["weights", "cstar"])]
    flow: Option<PathBuf>,
    /// Winner distribution for the flow: a file, or inline fractions.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    cstar: Option<Candidate>,
    /// Voter weights for FractionalVeto (file or inline).
    #[arg(long, requires = "q")]
    p: Option<String>,
    /// Candidate weights for FractionalVeto (file or inline).
    #[arg(long, requires = "p")]
    q: Option<String>,
}

#[derive(Args)]
struct DistortionArgs {
    ballots: PathBuf,
    /// Point-mass winner.
    #[arg(long, conflicts_with = "weights", required_unless_present = "weights")]
    winner: Option<Candidate>,
    /// Winner distribution: a file, or inline fractions.
    #[arg(long)]
    weights: Option<String>,
    /// Reference candidate (default: the worst case over all candidates).
    #[arg(long)]
    cstar: Option<Candidate>,
    /// Write the witness metric as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    input: OrderArgs,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    cstar: Candidate,
    /// Verify this flow file instead of building one.
    #[arg(long, conflicts_with = "out")]
    verify: Option<PathBuf>,
    /// Write the constructed flow to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CommitteeArgs {
    #[command(flatten)]
    input: OrderArgs,
    #[arg(long)]
    k: usize,
    /// Rank used for the committee cost (default: k).
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Experiment config file.
    #[arg(long)]
    config: PathBuf,
    /// Override the config's base seed.
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    /// Bad input, or a certificate that does not check out.
    Validation(String),
    Internal(String),
}

type CliResult<T> = Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_election(path: &Path) -> CliResult<Election> {
    Election::parse(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// A path to a weight file, or the fractions themselves.
fn load_weights(arg: &str, expected: usize, what: &str) -> CliResult<WeightVector> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    let w = WeightVector::parse(&text).map_err(|e| invalid(format!("{what} `{arg}`: {e}")))?;
    if w.len() != expected {
        return Err(invalid(format!("{what} has {} entries, expected {expected}", w.len())));
    }
    Ok(w)
}

fn check_candidate(e: &Election, c: Candidate, flag: &str) -> CliResult<()> {
    if c >= e.num_candidates() {
        return Err(invalid(format!(
            "{flag} {c} is out of range for {} candidates",
            e.num_candidates()
        )));
    }
    Ok(())
}

fn voter_order(e: &Election, args: &OrderArgs) -> CliResult<Vec<Voter>> {
    let order = match (&args.order, args.seed) {
        (Some(order), _) => order.clone(),
        (None, Some(seed)) => {
            let mut order = default_order(e);
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            order
        }
        (None, None) => default_order(e),
    };
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != default_order(e) {
        return Err(invalid(format!(
            "--order must be a permutation of 0..{}",
            e.num_voters()
        )));
    }
    Ok(order)
}

/// Write-then-rename, so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let internal = |e: std::io::Error| CliError::Internal(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(internal)?;
    tmp.write_all(contents.as_bytes()).map_err(internal)?;
    tmp.persist(path).map_err(|e| internal(e.error))?;
    Ok(())
}

fn emit(out: &mut String, path: Option<&Path>, contents: &str) -> CliResult<()> {
    match path {
        Some(path) => write_atomic(path, contents),
        None => {
            out.push_str(contents);
            Ok(())
        }
    }
}

fn run(args: &RunArgs) -> CliResult<String> {
    let e = load_election(&args.input.ballots)?;
    let mut out = String::new();
    if args.all_orders {
        let winners = potential_winners(&e, WinnerMode::Exact).map_err(|err| invalid(err.to_string()))?;
        let list: Vec<String> = winners.iter().map(|c| c.to_string()).collect();
        writeln!(out, "potential winners: {{{}}}", list.join(" ")).unwrap();
        return Ok(out);
    }
    let order = voter_order(&e, &args.input)?;
    let trace = plurality_veto(&e, &order).map_err(|err| invalid(err.to_string()))?;
    writeln!(out, "winner: {}", trace.winner).unwrap();
    if args.trace {
        out.push_str(&trace.to_string());
    }
    if let Some(path) = &args.out {
        write_atomic(path, &trace.to_string())?;
    }
    Ok(out)
}

fn randomize(args: &RandomizeArgs) -> CliResult<String> {
    let e = load_election(&args.input.ballots)?;
    let order = voter_order(&e, &args.input)?;
    let w = randomized_veto(&e, args.k, &order).map_err(|err| invalid(err.to_string()))?;
    let mut out = String::new();
    emit(&mut out, args.out.as_deref(), &format!("{w}\n"))?;
    Ok(out)
}

struct Checks {
    out: String,
    failed: bool,
}

impl Checks {
    fn record(&mut self, name: &str, result: Result<(), String>) {
        match result {
            Ok(()) => writeln!(self.out, "PASS {name}").unwrap(),
            Err(why) => {
                self.failed = true;
                writeln!(self.out, "FAIL {name}: {why}").unwrap();
            }
        }
    }
}

fn certify(args: &CertifyArgs) -> CliResult<String> {
    let e = load_election(&args.input.ballots)?;
    let mut checks = Checks {
        out: String::new(),
        failed: false,
    };

    let trace = match &args.trace {
        Some(path) => VetoTrace::parse(&read(path)?).map_err(|err| invalid(format!("{}: {err}", path.display())))?,
        None => plurality_veto(&e, &voter_order(&e, &args.input)?).map_err(|err| invalid(err.to_string()))?,
    };
    checks.record(
        "trace replays",
        match plurality_veto(&e, &trace.order) {
            Ok(replay) if replay.rounds == trace.rounds && replay.winner == trace.winner => Ok(()),
            Ok(replay) => Err(format!(
                "replaying order {:?} gives winner {}",
                trace.order, replay.winner
            )),
            Err(err) => Err(err.to_string()),
        },
    );
    checks.record(
        "veto pairing is a perfect matching",
        match verify_veto_matching(&e, &trace) {
            Ok(true) => Ok(()),
            Ok(false) => Err("some round's paired voter is repeated, mismatched or not an edge".into()),
            Err(err) => Err(err.to_string()),
        },
    );
    if trace.winner < e.num_candidates() {
        checks.record(
            &format!("domination graph of {} has a perfect matching", trace.winner),
            match has_perfect_matching(&domination_graph(&e, trace.winner)) {
                Some(_) => Ok(()),
                None => Err("no perfect matching exists".into()),
            },
        );
    }

    if let (Some(flow), Some(weights), Some(cstar)) = (&args.flow, &args.weights, args.cstar) {
        check_candidate(&e, cstar, "--cstar")?;
        let w = load_weights(weights, e.num_candidates(), "--weights")?;
        let g = FlowAssignment::parse(&read(flow)?).map_err(|err| invalid(format!("{}: {err}", flow.display())))?;
        let net = FlowNetwork::new(&e);
        match dual_from_flow(&net, &g, &w, cstar) {
            Ok((_, report)) => {
                checks.record("flow is valid", Ok(()));
                let violations = report.violations.join("; ");
                checks.record(
                    &format!(
                        "dual from flow is feasible with objective {}",
                        format_ratio(&report.objective)
                    ),
                    if report.is_feasible() { Ok(()) } else { Err(violations) },
                );
            }
            Err(err) => checks.record("flow is valid", Err(err.to_string())),
        }
    }

    if let (Some(p), Some(q)) = (&args.p, &args.q) {
        let p = load_weights(p, e.num_voters(), "--p")?;
        let q = load_weights(q, e.num_candidates(), "--q")?;
        let policy = if args.input.order.is_none() && args.input.seed.is_none() {
            VoterPolicy::LowestIndex
        } else {
            VoterPolicy::Order(voter_order(&e, &args.input)?)
        };
        let trace = fractional_veto(&e, &p, &q, &policy).map_err(|err| invalid(err.to_string()))?;
        let g = pq_domination_graph(&e, &p, &q, trace.winner).map_err(|err| CliError::Internal(err.to_string()))?;
        checks.record(
            &format!("fractional matching of {} is perfect", trace.winner),
            check_fractional_matching(&g, &trace.matching).map_err(|err| err.to_string()),
        );
    }

    if checks.failed {
        Err(CliError::Validation(checks.out))
    } else {
        Ok(checks.out)
    }
}

fn distortion_cmd(args: &DistortionArgs) -> CliResult<String> {
    let e = load_election(&args.ballots)?;
    let w = match (args.winner, &args.weights) {
        (Some(c), _) => {
            check_candidate(&e, c, "--winner")?;
            WeightVector::point_mass(e.num_candidates(), c).expect("candidate in range")
        }
        (None, Some(weights)) => load_weights(weights, e.num_candidates(), "--weights")?,
        (None, None) => unreachable!("clap requires --winner or --weights"),
    };
    if let Some(c) = args.cstar {
        check_candidate(&e, c, "--cstar")?;
    }
    let result = match args.cstar {
        Some(c) => worst_case_distortion(&e, &w, c),
        None => distortion(&e, &w),
    };
    let mut out = String::new();
    match result {
        Ok(Distortion {
            value, cstar, witness, ..
        }) => {
            writeln!(out, "distortion: {value:.9}").unwrap();
            writeln!(out, "cstar: {cstar}").unwrap();
            if let Some(path) = &args.out {
                write_atomic(path, &witness.to_csv())?;
            }
        }
        Err(DistortionError::Unbounded) => writeln!(out, "distortion: inf").unwrap(),
        Err(DistortionError::Solver(err)) => return Err(CliError::Internal(format!("LP solver failed: {err}"))),
        Err(err) => return Err(invalid(err.to_string())),
    }
    Ok(out)
}

fn flow(args: &FlowArgs) -> CliResult<String> {
    let e = load_election(&args.input.ballots)?;
    check_candidate(&e, args.cstar, "--cstar")?;
    let order = voter_order(&e, &args.input)?;
    let w = randomized_veto(&e, args.k, &order).map_err(|err| invalid(err.to_string()))?;
    let net = FlowNetwork::new(&e);
    let g = match &args.verify {
        Some(path) => {
            FlowAssignment::parse(&read(path)?).map_err(|err| invalid(format!("{}: {err}", path.display())))?
        }
        None => {
            let trace = plurality_veto(&e, &order).map_err(|err| invalid(err.to_string()))?;
            construct_flow(&e, &trace, args.k, args.cstar).map_err(|err| CliError::Internal(err.to_string()))?
        }
    };
    let costs = verify_flow(&net, &g, &w, args.cstar).map_err(|err| invalid(format!("flow rejected: {err}")))?;
    let mut out = String::new();
    writeln!(out, "weights: {w}").unwrap();
    for (v, cost) in costs.per_voter.iter().enumerate() {
        writeln!(out, "voter {v}: {}", format_ratio(cost)).unwrap();
    }
    writeln!(out, "cost: {}", format_ratio(&costs.cost)).unwrap();
    if let Some(path) = &args.out {
        write_atomic(path, &g.to_string())?;
    }
    Ok(out)
}

fn committee(args: &CommitteeArgs) -> CliResult<String> {
    let e = load_election(&args.input.ballots)?;
    let order = voter_order(&e, &args.input)?;
    let q = args.q.unwrap_or(args.k);
    let chosen = committee_select_with_order(&e, args.k, q, &order).map_err(|err| invalid(err.to_string()))?;
    let mut out = String::new();
    emit(&mut out, args.out.as_deref(), &format!("committee: {chosen}\n"))?;
    Ok(out)
}

fn simulate(args: &SimulateArgs) -> CliResult<String> {
    let text = read(&args.config)?;
    let mut config =
        ExperimentConfig::parse(&text).map_err(|err| invalid(format!("{}: {err}", args.config.display())))?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let report = run_experiment(&config).map_err(|err| CliError::Internal(err.to_string()))?;
    let mut out = String::new();
    match &args.out {
        Some(path) => {
            write_atomic(path, &report.to_csv())?;
            out.push_str(&report.summary());
        }
        None => out.push_str(&report.to_csv()),
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Run(args) => run(args),
        Command::Randomize(args) => randomize(args),
        Command::Certify(args) => certify(args),
        Command::Distortion(args) => distortion_cmd(args),
        Command::Flow(args) => flow(args),
        Command::Committee(args) => committee(args),
        Command::Simulate(args) => simulate(args),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(msg)) => {
            // Failed certificate reports go to stdout alongside the passes.
            if msg.contains("FAIL ") {
                print!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
