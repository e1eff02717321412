//! Batch front end: reads a flat key = value scenario configuration, runs
//! one command (optionally sweeping a parameter), and writes deterministic
//! CSV.
//!
//! Exit codes: 0 success, 2 configuration error (unknown or missing key,
//! malformed value), 3 physics-domain error from the library.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{CliError, RawConfig};

#[derive(Parser, Debug)]
#[command(name = "fewbody", version, about = "Few-body correlated-interference runner")]
struct Args {
    /// Configuration file (flat `key = value` lines, `#` comments).
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; overrides the config's `out` key.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Unit mode; overrides the config's `units` key.
    #[arg(long, value_parser = ["natural", "si"])]
    units: Option<String>,
    /// Suppress informational stdout (errors still go to stderr).
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("fewbody: {err}");
            ExitCode::from(match err {
                CliError::Config(_) => 2,
                CliError::Physics(_) => 3,
                CliError::Io(_) => 1,
            })
        }
    }
}

fn run(args: &Args) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.config).map_err(CliError::Io)?;
    let mut raw = RawConfig::parse(&text)?;
    let units_name = match &args.units {
        Some(explicit) => Some(explicit.clone()),
        None => raw.take("units"),
    };
    let units = config::parse_units(units_name.as_deref())?;
    let out_path = args
        .out
        .clone()
        .or_else(|| raw.take("out").map(PathBuf::from))
        .ok_or_else(|| CliError::Config("missing output path (flag --out or key `out`)".into()))?;

    let outcome = commands::run(&mut raw, &units)?;

    // Everything validated; only now touch the filesystem.
    output::write_csv(&out_path, &outcome.table, &units).map_err(CliError::Io)?;
    if !args.quiet {
        for note in &outcome.notes {
            println!("{note}");
        }
        println!("wrote {}", out_path.display());
    }
    for warning in &outcome.warnings {
        eprintln!("fewbody: warning: {warning}");
    }
    Ok(())
}
