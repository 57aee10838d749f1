//! Command-line tools over `histqca`: `ca` for classical rules, `qca` for
//! history and partitioned automata plus the verification harness, `qlga`
//! for lattice-gas products and walks.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage or input
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

pub mod ca;
pub mod checks;
pub mod load;
pub mod qca;
pub mod qlga;
pub mod report;

/// Result of a command that ran to completion.
pub enum Outcome {
    Success,
    CheckFailed,
}

fn finish(result: anyhow::Result<Outcome>) -> ExitCode {
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_args<P: Parser>(args: impl IntoIterator<Item = OsString>) -> Result<P, ExitCode> {
    P::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        let _ = e.print();
        ExitCode::from(code)
    })
}

pub fn ca_main(args: impl IntoIterator<Item = OsString>) -> ExitCode {
    match parse_args::<ca::Cli>(args) {
        Ok(cli) => finish(ca::run(cli)),
        Err(code) => code,
    }
}

pub fn qca_main(args: impl IntoIterator<Item = OsString>) -> ExitCode {
    match parse_args::<qca::Cli>(args) {
        Ok(cli) => finish(qca::run(cli)),
        Err(code) => code,
    }
}

pub fn qlga_main(args: impl IntoIterator<Item = OsString>) -> ExitCode {
    match parse_args::<qlga::Cli>(args) {
        Ok(cli) => finish(qlga::run(cli)),
        Err(code) => code,
    }
}

/// Writes to `path`, or to stdout when absent.
pub(crate) fn emit(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    use anyhow::Context;
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}
