//! `qca`: history evolution, partitioned automata and the verifier.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use histqca::hilbert::{SiteSpace, StateVector};
use histqca::history::{run_history, HistorySpace};
use histqca::partition::{build_super_f, margolus_step};

use crate::checks::{Check, Params};
use crate::load::{load_block_unitary, load_rule_and_config, RuleArgs};
use crate::report::{CheckResult, Report};
use crate::{emit, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "qca",
    version,
    about = "Quantum histories of local rules, partitioned automata and checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve |K⟩|0…0⟩ through T layers and print the state snapshot
    HistoryRun(HistoryRunArgs),
    /// One Margolus step on a basis input, or verification of the six-site operators
    Margolus(MargolusArgs),
    /// Run a named check and print a JSON report
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct HistoryRunArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    /// First-layer configuration file
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
    /// Number of time layers T
    #[arg(long, default_value_t = 2)]
    pub layers: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct MargolusArgs {
    /// Ring length (even)
    #[arg(long)]
    pub ring: usize,
    /// Cell alphabet size
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Block unitary: JSON file of [re, im] rows, or an integer seed
    #[arg(long, default_value = "0")]
    pub q: String,
    /// Input cells as digits, e.g. `01100000` (default all zero)
    #[arg(long)]
    pub input: Option<String>,
    /// Check commutation and unitarity of the six-site operators instead
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long)]
    #[serde(skip)]
    pub timing: bool,
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Ring length or cycle size (check-specific default)
    #[arg(long)]
    pub ring: Option<usize>,
    /// `all-elementary` or a comma-separated list of rule numbers
    #[arg(long, default_value = "all-elementary")]
    pub rules: String,
    /// Number of random cases or seeds (check-specific default)
    #[arg(long)]
    pub cases: Option<usize>,
    /// Override the check's tolerance
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Covariance with entrywise conjugation instead of the adjoint
    #[arg(long)]
    pub conjugate: bool,
    /// Record wall time in the report
    #[arg(long)]
    #[serde(skip)]
    pub timing: bool,
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::HistoryRun(a) => history_run(a),
        Command::Margolus(a) => margolus(a),
        Command::Verify(a) => verify(a),
    }
}

fn history_run(a: HistoryRunArgs) -> Result<Outcome> {
    let (rule, config) = load_rule_and_config(&a.rule, &a.config)?;
    let space = HistorySpace::new(config.geometry().clone(), config.alphabet(), a.layers)?;
    let out = run_history(&rule, &space, &space.initial_basis(&config)?)?;
    emit(a.out.as_ref(), &(serde_json::to_string_pretty(&out.snapshot())? + "\n"))?;
    Ok(Outcome::Success)
}

fn parse_cells(text: &str, m: usize) -> Result<Vec<usize>> {
    text.chars()
        .enumerate()
        .map(|(i, ch)| {
            ch.to_digit(36)
                .map(|d| d as usize)
                .filter(|&d| d < m)
                .with_context(|| format!("input column {}: invalid cell symbol `{ch}`", i + 1))
        })
        .collect()
}

fn margolus(a: MargolusArgs) -> Result<Outcome> {
    let start = Instant::now();
    let q = load_block_unitary(&a.q, a.m)?;
    if a.verify {
        let space = HistorySpace::new(
            histqca::lattice::LatticeGeometry::ring(a.ring)?,
            histqca::lattice::CellAlphabet::modular(a.m)?,
            2,
        )?;
        let blocks = a.ring / 2;
        let ops = (0..blocks)
            .map(|i| build_super_f(&q, &space, i))
            .collect::<histqca::Result<Vec<_>>>()?;
        let unit = ops.iter().map(|o| o.unitarity_defect()).fold(0.0, f64::max);
        let mut comm: f64 = 0.0;
        for i in 0..blocks {
            for j in i + 1..blocks {
                comm = comm.max(histqca::hilbert::commutator_defect(&ops[i], &ops[j])?);
            }
        }
        let checks = vec![
            CheckResult::within("super-f-commute", "partition.superf", comm, a.tolerance),
            CheckResult::within("super-f-unitary", "partition.superf", unit, a.tolerance),
        ];
        let mut report = Report::new(&a, checks);
        if a.timing {
            report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
        }
        emit(a.out.as_ref(), &report.to_json()?)?;
        return Ok(if report.passed() {
            Outcome::Success
        } else {
            Outcome::CheckFailed
        });
    }
    let space = SiteSpace::uniform(a.ring, a.m)?;
    let cells = match &a.input {
        Some(text) => parse_cells(text, a.m)?,
        None => vec![0; a.ring],
    };
    if cells.len() != a.ring {
        bail!("input has {} cells, ring has {}", cells.len(), a.ring);
    }
    let out = margolus_step(&q, &StateVector::basis(space, &cells)?)?;
    emit(a.out.as_ref(), &(serde_json::to_string_pretty(&out.snapshot())? + "\n"))?;
    Ok(Outcome::Success)
}

fn parse_rules(text: &str) -> Result<Vec<u32>> {
    if text == "all-elementary" {
        return Ok((0..256).collect());
    }
    text.split(',')
        .map(|t| {
            let n: u32 = t.trim().parse().with_context(|| format!("bad rule number `{t}`"))?;
            if n > 255 {
                bail!("rule number {n} outside 0..=255");
            }
            Ok(n)
        })
        .collect()
}

fn verify(a: VerifyArgs) -> Result<Outcome> {
    let start = Instant::now();
    let params = Params {
        seed: a.seed,
        ring: a.ring,
        rules: parse_rules(&a.rules)?,
        cases: a.cases,
        tolerance: a.tolerance,
        conjugate: a.conjugate,
    };
    let checks = a.check.run(&params)?;
    let mut report = Report::new(&a, checks);
    if a.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    emit(a.out.as_ref(), &report.to_json()?)?;
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::CheckFailed
    })
}
