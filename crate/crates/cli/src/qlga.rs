//! `qlga`: many-qubot products, tables, walks.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use histqca::hilbert::StateVector;
use histqca::qlga::{
    coined_walk_step, continuous_qubot, symmetric_product, tensor_product, wedge, wedge_tables, Coin, FockState,
    QubotSpace, SnapshotRow, DEFAULT_N_MAX,
};

use crate::load::load_modes;
use crate::{emit, Outcome};

#[derive(Debug, Parser)]
#[command(name = "qlga", version, about = "Qubots, coined walks and multi-particle products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of single-particle states read from a modes file
    Wedge(WedgeArgs),
    /// Print the four-mode multiplication tables
    Table(TableArgs),
    /// Discrete coined walk on a cycle
    Walk(WalkArgs),
    /// Continuous-time conditional shift snapshots
    Qubot(QubotArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Product {
    Fermionic,
    Bosonic,
    Distinguishable,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct WedgeArgs {
    /// JSON file `{"n_modes": n, "states": [[[re, im], ...], ...]}`
    #[arg(long, value_name = "FILE")]
    pub modes: PathBuf,
    #[arg(long, value_enum, default_value_t = Product::Fermionic)]
    pub statistics: Product,
    /// Bosonic occupation cutoff
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: u16,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[arg(long)]
    pub cycle: usize,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = CoinArg::Hadamard)]
    pub coin: CoinArg,
    /// Starting cell; the internal state starts in 0
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CoinArg {
    Hadamard,
    Identity,
}

#[derive(Debug, Args)]
pub struct QubotArgs {
    #[arg(long)]
    pub cycle: usize,
    /// Final time; snapshots are spaced evenly on [0, tau]
    #[arg(long)]
    pub tau: f64,
    #[arg(long, default_value_t = 11)]
    pub snapshots: usize,
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// Internal state of the start: 0 moves right, 1 moves left
    #[arg(long, default_value_t = 0)]
    pub internal: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Wedge(a) => wedge_cmd(a),
        Command::Table(a) => {
            emit(a.out.as_ref(), &wedge_tables()?)?;
            Ok(Outcome::Success)
        }
        Command::Walk(a) => walk(a),
        Command::Qubot(a) => qubot(a),
    }
}

#[derive(Serialize)]
struct Term {
    key: Vec<u16>,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct FockOutput {
    n_modes: usize,
    statistics: histqca::qlga::Statistics,
    norm: f64,
    terms: Vec<Term>,
}

fn fock_json(state: &FockState) -> Result<String> {
    let out = FockOutput {
        n_modes: state.n_modes(),
        statistics: state.statistics(),
        norm: state.norm(),
        terms: state
            .amplitudes()
            .iter()
            .map(|(k, a)| Term {
                key: k.clone(),
                re: a.re,
                im: a.im,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

fn wedge_cmd(a: WedgeArgs) -> Result<Outcome> {
    let states = load_modes(&a.modes)?;
    if states.is_empty() {
        bail!("{}: no states", a.modes.display());
    }
    let fock = match a.statistics {
        Product::Fermionic => wedge(&states)?,
        Product::Bosonic => symmetric_product(&states, Some(a.n_max))?,
        Product::Distinguishable => tensor_product(&states)?,
    };
    emit(a.out.as_ref(), &fock_json(&fock)?)?;
    Ok(Outcome::Success)
}

fn rows_of(space: &QubotSpace, tau: f64, state: &StateVector) -> Vec<SnapshotRow> {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let (_, site, internal) = space.mode_coords(j);
            SnapshotRow {
                tau,
                site,
                internal,
                magnitude: a.norm(),
                phase: if a.norm() > 1e-15 { a.arg() } else { 0.0 },
            }
        })
        .collect()
}

/// Shortest round-trip text of a float.
fn float(x: f64) -> Result<String> {
    Ok(serde_json::to_string(&(x + 0.0))?)
}

fn csv_text(rows: &[SnapshotRow], with_tau: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if with_tau {
        w.write_record(["tau", "site", "internal", "magnitude", "phase"])?;
    } else {
        w.write_record(["site", "internal", "magnitude", "phase"])?;
    }
    for r in rows {
        let mut rec = vec![
            r.site.to_string(),
            r.internal.to_string(),
            float(r.magnitude)?,
            float(r.phase)?,
        ];
        if with_tau {
            rec.insert(0, float(r.tau)?);
        }
        w.write_record(&rec)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn walk(a: WalkArgs) -> Result<Outcome> {
    let space = QubotSpace::new(a.cycle, 2)?;
    let coin = match a.coin {
        CoinArg::Hadamard => Coin::Hadamard,
        CoinArg::Identity => Coin::Identity,
    };
    let step = coined_walk_step(&space, coin)?;
    let mut state = space.basis_state(0, a.start, 0)?;
    for _ in 0..a.steps {
        state = step.apply(&state)?;
    }
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&state.snapshot())? + "\n",
        Format::Csv => csv_text(&rows_of(&space, a.steps as f64, &state), false)?,
    };
    emit(a.out.as_ref(), &text)?;
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct TimedSnapshot {
    tau: f64,
    snapshot: histqca::hilbert::StateSnapshot,
}

fn qubot(a: QubotArgs) -> Result<Outcome> {
    if a.snapshots == 0 {
        bail!("need at least one snapshot");
    }
    let space = QubotSpace::new(a.cycle, 2)?;
    let init = space.basis_state(0, a.start, a.internal)?;
    let taus: Vec<f64> = if a.snapshots == 1 {
        vec![a.tau]
    } else {
        (0..a.snapshots)
            .map(|k| a.tau * k as f64 / (a.snapshots - 1) as f64)
            .collect()
    };
    let mut states = Vec::with_capacity(taus.len());
    for &tau in &taus {
        states.push((tau, continuous_qubot(&space, tau)?.apply(&init)?));
    }
    let text = match a.format {
        Format::Csv => {
            let rows: Vec<SnapshotRow> = states.iter().flat_map(|(t, s)| rows_of(&space, *t, s)).collect();
            csv_text(&rows, true)?
        }
        Format::Json => {
            let snaps: Vec<TimedSnapshot> = states
                .iter()
                .map(|(tau, s)| TimedSnapshot {
                    tau: *tau,
                    snapshot: s.snapshot(),
                })
                .collect();
            serde_json::to_string_pretty(&snaps)? + "\n"
        }
    };
    emit(a.out.as_ref(), &text)?;
    Ok(Outcome::Success)
}
