//! Rule, configuration, block-unitary and mode-file inputs.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use histqca::hilbert::random::seeded_rng;
use histqca::hilbert::{SiteSpace, StateVector};
use histqca::lattice::io::{default_offsets, parse_configuration, parse_rule};
use histqca::lattice::{elementary_rule, game_of_life, CellAlphabet, Configuration, LocalRule, SubtractKind};
use histqca::partition::BlockUnitary;

/// Where the local rule comes from.
#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct RuleSource {
    /// Elementary rule number 0-255 (ring, neighbors -1 0 1)
    #[arg(long, value_name = "N")]
    pub elementary: Option<u32>,
    /// Conway's Game of Life on a torus
    #[arg(long)]
    pub life: bool,
    /// Rule table file
    #[arg(long, value_name = "FILE")]
    pub rule: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RuleArgs {
    #[command(flatten)]
    pub source: RuleSource,
    /// Use XOR instead of subtraction mod m (rule files only, m a power of two)
    #[arg(long)]
    pub xor: bool,
    /// Neighbor offsets for a rule file, e.g. `-1,0,1` or `-1:-1,-1:0,...`
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub offsets: Option<String>,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// `-1:0,0:1` → `[[-1, 0], [0, 1]]`.
pub fn parse_offsets(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(',')
        .map(|o| {
            o.split(':')
                .map(|c| c.trim().parse::<i64>().with_context(|| format!("bad offset `{o}`")))
                .collect()
        })
        .collect()
}

fn rule_header(text: &str) -> Option<(usize, usize)> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))?;
    let mut it = line.split_whitespace().map(|t| t.parse().ok());
    match (it.next()?, it.next()?, it.next()) {
        (Some(m), Some(k), None) => Some((m, k)),
        _ => None,
    }
}

impl RuleArgs {
    fn kind(&self) -> SubtractKind {
        if self.xor {
            SubtractKind::XorBits
        } else {
            SubtractKind::ModM
        }
    }

    /// Alphabet implied by the rule source.
    pub fn alphabet(&self) -> Result<CellAlphabet> {
        match &self.source.rule {
            Some(path) => {
                let text = read(path)?;
                match rule_header(&text) {
                    Some((m, _)) => CellAlphabet::new(m, self.kind()).with_context(|| path.display().to_string()),
                    None => Err(self.load(1).unwrap_err()),
                }
            }
            None => Ok(CellAlphabet::binary()),
        }
    }

    /// Builds the rule; `rank` picks default offsets for rule files.
    pub fn load(&self, rank: usize) -> Result<LocalRule> {
        if let Some(n) = self.source.elementary {
            return Ok(elementary_rule(n)?);
        }
        if self.source.life {
            return Ok(game_of_life());
        }
        let path = self.source.rule.as_ref().context("no rule given")?;
        let text = read(path)?;
        let offsets = match (&self.offsets, rule_header(&text)) {
            (Some(list), _) => parse_offsets(list)?,
            (None, Some((_, k))) => default_offsets(k, rank)?,
            (None, None) => Vec::new(),
        };
        parse_rule(&text, self.kind(), offsets).with_context(|| path.display().to_string())
    }
}

pub fn load_configuration(path: &Path, alphabet: CellAlphabet) -> Result<Configuration> {
    parse_configuration(&read(path)?, alphabet).with_context(|| path.display().to_string())
}

/// Rule and starting configuration, with offsets matched to the
/// configuration's rank.
pub fn load_rule_and_config(rule: &RuleArgs, config: &Path) -> Result<(LocalRule, Configuration)> {
    let config = load_configuration(config, rule.alphabet()?)?;
    let rule = rule.load(config.geometry().rank())?;
    Ok((rule, config))
}

/// A block unitary given as a JSON file of `[re, im]` rows, or as a seed
/// for a Haar-random one.
pub fn load_block_unitary(source: &str, m: usize) -> Result<BlockUnitary> {
    if let Ok(seed) = source.parse::<u64>() {
        return Ok(BlockUnitary::random(m, &mut seeded_rng(seed))?);
    }
    let path = Path::new(source);
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(&read(path)?).with_context(|| path.display().to_string())?;
    let n = m * m;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        bail!("{}: expected a {n}x{n} matrix", path.display());
    }
    let q = DMatrix::from_fn(n, n, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1]));
    BlockUnitary::new(m, q).with_context(|| path.display().to_string())
}

/// Single-particle states over a common mode space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModesFile {
    pub n_modes: usize,
    pub states: Vec<Vec<[f64; 2]>>,
}

pub fn load_modes(path: &Path) -> Result<Vec<StateVector>> {
    let file: ModesFile = serde_json::from_str(&read(path)?).with_context(|| path.display().to_string())?;
    let space = SiteSpace::uniform(1, file.n_modes)?;
    file.states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let amps = s.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            StateVector::from_amplitudes(space.clone(), amps).with_context(|| format!("{}: state {i}", path.display()))
        })
        .collect()
}
