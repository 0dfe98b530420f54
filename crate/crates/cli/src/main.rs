use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monodromy_cli::commands::DEFAULT_CAP;
use monodromy_cli::{cmd_annihilate, cmd_minimal, cmd_model, cmd_sweep, CliError, Context};
use monodromy_core::homology::Family;
use serde::Serialize;

/// Exact monodromy models, invariant subspaces and Wronskian annihilators.
#[derive(Parser)]
#[command(name = "monodromy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate a homology model.
    Model {
        /// toy, parabolic or lotka_volterra
        family: Family,
        #[arg(short)]
        p: u32,
        /// Required for toy and parabolic.
        #[arg(short)]
        q: Option<u32>,
        /// Include every matrix of the model in the report.
        #[arg(long)]
        dump: bool,
    },
    /// Close gamma under forced monodromy, certify minimality and bound the annihilator order.
    Minimal {
        family: Family,
        #[arg(short)]
        p: u32,
        #[arg(short)]
        q: Option<u32>,
        /// Largest |l| sampled for mon0^l [default: 3 x torsion order]
        #[arg(long)]
        exponent_bound: Option<u64>,
        /// Orbit size at which enumeration gives up.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run a family over all coprime pairs up to a bound, one JSON line per pair.
    Sweep {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        max_pq: u32,
        /// Worker threads [default: all cores]
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Build the monic annihilator of `;`-separated solutions.
    Annihilate {
        #[arg(long)]
        solutions: String,
    },
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> io::Result<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(io::Error::other)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let ctx = Context::from_env();
    let write = |r: io::Result<()>| r.map_err(|e| CliError::Invalid(format!("writing output: {e}")));
    match cli.command {
        Command::Model { family, p, q, dump } => {
            let report = cmd_model(&ctx, family, p, q, dump)?;
            write(emit(&report, true))?;
            Ok(status(report.all_pass))
        }
        Command::Minimal {
            family,
            p,
            q,
            exponent_bound,
            cap,
        } => {
            let report = cmd_minimal(&ctx, family, p, q, exponent_bound, cap)?;
            write(emit(&report, true))?;
            Ok(status(report.all_pass))
        }
        Command::Sweep { family, max_pq, jobs } => {
            let out = cmd_sweep(&ctx, family, max_pq, jobs)?;
            for report in &out.reports {
                write(emit(report, false))?;
            }
            write(emit(&serde_json::json!({ "summary": out.summary }), false))?;
            Ok(status(out.summary.all_pass))
        }
        Command::Annihilate { solutions } => {
            let report = cmd_annihilate(&solutions)?;
            write(emit(&report, true))?;
            Ok(status(report.all_pass))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
