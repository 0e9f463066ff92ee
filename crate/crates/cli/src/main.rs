//! `primdec`: batch front end for the primary decomposition engine.
//!
//! Exit codes: 0 certified result, 1 error (including usage errors),
//! 2 UNKNOWN verdict, 3 timeout.

mod commands;
mod progress;
mod report;
mod spec_file;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "primdec",
    version,
    about = "Primary decomposition and primality certificates for polynomial ideals"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Seed for every randomized choice of the run.
    #[arg(long, global = true, env = "PRIMDEC_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Abort after this many seconds (exit code 3).
    #[arg(long, global = true, value_name = "SECONDS")]
    pub timeout: Option<u64>,

    /// Write the result here instead of stdout.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Write a hyperedge ideal as a generator file.
    Build {
        /// `paper-3x12`, `p1-minors`, or a TOML hyperedge spec.
        source: String,
    },
    /// Reduced Gröbner basis, one element per line.
    Groebner {
        input: PathBuf,
        /// `lex`, `degrevlex`, or `block:<vars>|<vars>|...`.
        #[arg(long, default_value = "degrevlex")]
        order: String,
    },
    /// Maximal independent sets, optionally scored and ranked.
    Indepsets {
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        limit: usize,
        /// Score each set and print them ranked.
        #[arg(long)]
        score: bool,
        #[arg(long, default_value = "degrevlex")]
        order: String,
    },
    /// Primary decomposition.
    Decompose {
        input: PathBuf,
        /// Number of independent sets scored at each step.
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Skip the intersection check after each split.
        #[arg(long)]
        no_verify: bool,
    },
    /// Primality check with optional symmetry pruning.
    Primality {
        input: PathBuf,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Symmetry generators: a file of cycle lines, or `paper-3x12`.
        #[arg(long, value_name = "FILE|paper-3x12")]
        symmetry: Option<String>,
        /// Localize at these variables (comma separated) instead of the
        /// top-ranked independent set.
        #[arg(long, value_delimiter = ',', value_name = "NAMES")]
        u: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Strategy::Iterate)]
        strategy: Strategy,
    },
    /// Check the structure of a 44-element generator set.
    Verify {
        input: PathBuf,
        #[arg(long, default_value = "paper-3x12")]
        against: String,
        /// Input is a Singular `ideal G = ...;` block.
        #[arg(long)]
        singular: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Iterate,
    ExtraVariable,
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Certified,
    Unknown,
    Failed,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Certified => 0,
            Outcome::Failed => 1,
            Outcome::Unknown => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.global.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .init();

    let (tx, rx) = mpsc::channel();
    let global = cli.global.clone();
    let command = cli.command.clone();
    std::thread::spawn(move || {
        let _ = tx.send(commands::run(&global, &command));
    });
    let result = match cli.global.timeout {
        Some(secs) => match rx.recv_timeout(Duration::from_secs(secs)) {
            Ok(r) => r,
            Err(_) => {
                eprintln!("primdec: timed out after {secs} s");
                for line in progress::snapshot() {
                    eprintln!("  {line}");
                }
                return ExitCode::from(3);
            }
        },
        None => rx.recv().expect("worker thread exited without a result"),
    };
    match result.and_then(|(text, outcome)| {
        commands::emit(cli.global.output.as_deref(), &text)?;
        Ok(outcome)
    }) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("primdec: {e}");
            ExitCode::from(1)
        }
    }
}
