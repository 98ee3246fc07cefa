//! `wsim`: W-state simulation from the command line.
//!
//! Every subcommand prints one JSON result document on stdout. Exit codes:
//! 0 success, 1 numeric or resource failure, 2 usage or parse error,
//! 3 the requested model has no solution.

mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::QstArgs;
use crate::error::CliError;

/// Overrides the largest register the simulator will allocate.
const MAX_QUBITS_ENV: &str = "WSIM_MAX_QUBITS";

#[derive(Parser)]
#[command(name = "wsim", version, about = "W-state simulator")]
struct Cli {
    /// Print an indented table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pairwise, total and mirror concurrence.
    Concurrence {
        /// Coefficient file, or `-` for stdin.
        input: String,
        /// Compare closed form and Wootters value for one pair, e.g. `1,2`.
        #[arg(long, value_parser = parse_pair)]
        pair: Option<(usize, usize)>,
    },
    /// Transfer `alpha|0> + beta|1>` across the register.
    Qst {
        input: String,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Also draw sampled trials with this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Sending qubit (default 1).
        #[arg(long)]
        from: Option<usize>,
        /// Receiving qubit (default N).
        #[arg(long)]
        to: Option<usize>,
    },
    /// Prepare the known state `alpha|0> + beta|1>` on the last qubit.
    Prepare {
        input: String,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Beam-splitter reflectivities that produce the register from one photon.
    DesignBs {
        input: String,
        /// Capture the photon in cavities and run the transfer on the result.
        #[arg(long)]
        run_qst: bool,
        #[arg(long, default_value_t = 0.6, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.8, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Output modes of a given beam-splitter chain.
    SimulateBs {
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_negative_numbers = true
        )]
        reflectivities: Vec<f64>,
        /// One phase per output mode, in radians.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        phases: Option<Vec<f64>>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(',')
        .ok_or_else(|| format!("expected M,N, got `{s}`"))?;
    let index = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad qubit index `{t}`: {e}"))
    };
    Ok((index(m)?, index(n)?))
}

fn apply_env() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var(MAX_QUBITS_ENV) {
        let cap = raw
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{MAX_QUBITS_ENV}={raw} is not a qubit count")))?;
        wsim_core::set_max_qubits(cap);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<serde_json::Value, CliError> {
    apply_env()?;
    let doc = match cli.command {
        Command::Concurrence { input, pair } => commands::concurrence(&input::load(&input)?, pair)?,
        Command::Qst {
            input,
            alpha,
            beta,
            seed,
            trials,
            from,
            to,
        } => {
            let args = QstArgs {
                alpha,
                beta,
                seed,
                trials,
                from,
                to,
            };
            commands::qst(&input::load(&input)?, &args)?
        }
        Command::Prepare { input, alpha, beta } => {
            commands::prepare(&input::load(&input)?, alpha, beta)?
        }
        Command::DesignBs {
            input,
            run_qst,
            alpha,
            beta,
        } => commands::design_bs(&input::load(&input)?, run_qst.then_some((alpha, beta)))?,
        Command::SimulateBs {
            reflectivities,
            phases,
        } => commands::simulate_bs(reflectivities, phases)?,
    };
    Ok(doc.into_value())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let pretty = cli.pretty;
    match run(cli) {
        Ok(doc) => {
            let text = if pretty {
                output::pretty(&doc)
            } else {
                output::json(&doc)
            };
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
