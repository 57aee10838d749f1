//! `ca`: classical rules.

use std::fmt::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use histqca::lattice::io::format_configuration;
use histqca::lattice::{apply_rule, lift_reversible, run_second_order};

use crate::load::{load_configuration, load_rule_and_config, RuleArgs};
use crate::{emit, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "ca",
    version,
    about = "Classical local rules, reversible lifting and second-order evolution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate a rule from a configuration
    Run(RunArgs),
    /// Print the self-inverse lifting of a rule as a table
    Lift(LiftArgs),
    /// Second-order evolution of a (previous, current) pair
    SecondOrder(SecondOrderArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Starting configuration file
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    /// Print every configuration, separated by blank lines
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Lattice rank used for default offsets of rule files
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SecondOrderArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long, value_name = "FILE")]
    pub prev: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub curr: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    /// Run backwards: swap the pair, evolve, swap back
    #[arg(long)]
    pub reverse: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Run(a) => run_rule(a),
        Command::Lift(a) => lift(a),
        Command::SecondOrder(a) => second_order(a),
    }
}

fn run_rule(a: RunArgs) -> Result<Outcome> {
    let (rule, mut config) = load_rule_and_config(&a.rule, &a.config)?;
    let mut frames = vec![format_configuration(&config)];
    for _ in 0..a.steps {
        config = apply_rule(&config, &rule)?;
        if a.all {
            frames.push(format_configuration(&config));
        }
    }
    let text = if a.all {
        frames.join("\n")
    } else {
        format_configuration(&config)
    };
    emit(a.out.as_ref(), &text)?;
    Ok(Outcome::Success)
}

fn lift(a: LiftArgs) -> Result<Outcome> {
    let lifted = lift_reversible(&a.rule.load(a.rank)?);
    let m = lifted.base().alphabet().size();
    let k = lifted.arity();
    let len = lifted.base().table().len() * m;
    let digits = |mut i: usize| {
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = i % m;
            i /= m;
        }
        d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
    };
    let mut text = format!("{m} {k}\n");
    for i in 0..len {
        writeln!(text, "{} -> {}", digits(i), digits(lifted.apply_index(i)))?;
    }
    emit(a.out.as_ref(), &text)?;
    Ok(Outcome::Success)
}

fn second_order(a: SecondOrderArgs) -> Result<Outcome> {
    let alphabet = a.rule.alphabet()?;
    let prev = load_configuration(&a.prev, alphabet)?;
    let curr = load_configuration(&a.curr, alphabet)?;
    let rule = a.rule.load(curr.geometry().rank())?;
    let (p, c) = if a.reverse {
        let (c, p) = run_second_order(&curr, &prev, &rule, a.steps)?;
        (p, c)
    } else {
        run_second_order(&prev, &curr, &rule, a.steps)?
    };
    let text = format!("{}\n{}", format_configuration(&p), format_configuration(&c));
    emit(a.out.as_ref(), &text)?;
    Ok(Outcome::Success)
}
