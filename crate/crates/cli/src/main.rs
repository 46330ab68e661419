//! `ptspectra` command-line tool.
//!
//! Exit codes: 0 success, 1 reproduction outside tolerance, 2 usage error,
//! 3 unconverged or unlabeled levels (still listed, flagged).

mod args;
mod cmd;
mod reference;
mod svg;
mod table;

use args::{Cli, Command, Format, OutputArgs};
use clap::Parser;
use serde_json::json;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use table::{RunManifest, Table};

pub const OUTPUT_DIR_VAR: &str = "PTSPECTRA_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Warnings,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Warnings => 3,
        }
    }
}

/// Everything a command produces.
pub struct Report {
    pub table: Table,
    pub manifest: RunManifest,
    pub svg: Option<String>,
    pub status: Status,
}

#[derive(Debug)]
pub enum CliError {
    Usage(UsageError),
    Numerical(ptspectra::Error),
    Io(std::io::Error),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e)
    }
}

impl From<ptspectra::Error> for CliError {
    fn from(e: ptspectra::Error) -> Self {
        use ptspectra::Error as E;
        match e {
            E::InvalidParameter(_) | E::NonCanonical { .. } | E::NoRayPair | E::RayTooShort { .. } => {
                CliError::Usage(UsageError(e.to_string()))
            }
            other => CliError::Numerical(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn resolve_output(path: &PathBuf) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn sidecar(path: &std::path::Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    path.with_file_name(name)
}

fn emit(report: &Report, out: &OutputArgs) -> Result<(), CliError> {
    let manifest = serde_json::to_value(&report.manifest).expect("manifest serialises");
    let (body, embedded) = match out.format {
        Format::Csv => (report.table.to_csv(out.digits), false),
        Format::Json => {
            let doc = json!({ "manifest": manifest, "rows": report.table.to_json_rows(out.digits) });
            (serde_json::to_string_pretty(&doc).expect("json") + "\n", true)
        }
        Format::Svg => match &report.svg {
            Some(svg) => (svg.clone(), false),
            None => return Err(UsageError("svg output is only available for the stokes command".into()).into()),
        },
    };
    match &out.output {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, body)?;
            if !embedded {
                let text = serde_json::to_string_pretty(&manifest).expect("json") + "\n";
                std::fs::write(sidecar(&path), text)?;
            }
        }
        None => print!("{body}"),
    }
    for w in &report.manifest.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let (report, out) = match cli.command {
        Command::Wkb(a) => (cmd::wkb::run(&a)?, a.out),
        Command::Spectrum(a) => (cmd::spectrum::run(&a)?, a.out),
        Command::Stokes(a) => (cmd::stokes::run(&a)?, a.out),
        Command::Reproduce(a) => (cmd::reproduce::run(&a)?, a.out),
    };
    emit(&report, &out)?;
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(CliError::Usage(e)) => {
            eprintln!("error: {e}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
