use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use tensemv_cli::commands::{self, CheckFlags};
use tensemv_cli::report::{error_json, error_text};
use tensemv_cli::{CliError, Report, SpecDocument};

/// Exact toolkit for finite MV-algebras, threshold terms and tense operators.
#[derive(Parser, Debug)]
#[command(name = "tensemv", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Append wall-clock time to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the threshold term for a dyadic p/2^m.
    Synth {
        r: String,
        /// Largest allowed exponent m.
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Confirm the threshold on the grid j/N.
        #[arg(long, value_name = "N")]
        verify: Option<u32>,
    },
    /// Evaluate a term, e.g. `eval 'x+y' --algebra 'chain(2) x chain(3)' x=(1/2,1/3) y=(0,1)`.
    Eval {
        term: String,
        #[arg(long)]
        algebra: String,
        bindings: Vec<String>,
    },
    /// List ultrafilters with their atoms and morphisms.
    Ultrafilters { algebra: String },
    /// Check an operator (FM axioms), a pair (tense axioms), a semi-state, or
    /// enumerate the semi-states of an algebra.
    Check {
        file: PathBuf,
        #[arg(required = true, num_args = 1..=2)]
        names: Vec<String>,
        #[arg(long)]
        nmax: Option<u32>,
        /// Read the operator as a [0,1]-valued table.
        #[arg(long)]
        semistate: bool,
        /// Enumerate all semi-states of the named algebra.
        #[arg(long, conflicts_with = "semistate")]
        enumerate: bool,
        /// Value grid j/g used by --enumerate.
        #[arg(long, default_value_t = 4)]
        grid: u32,
    },
    /// Print the operators a frame induces on chain(m)^T as a document.
    Induce {
        file: PathBuf,
        frame: String,
        m: u32,
        /// Lift the size guards.
        #[arg(long)]
        force: bool,
    },
    /// Build the relation of an operator (or pair) and check the diagrams.
    Represent {
        file: PathBuf,
        #[arg(required = true, num_args = 1..=2)]
        names: Vec<String>,
    },
    /// Properties of a frame, or of an operator pair and its relation.
    FrameProps {
        file: PathBuf,
        #[arg(required = true, num_args = 1..=2)]
        names: Vec<String>,
    },
    /// Run a named verification suite, or `all`.
    Suite { name: String },
}

impl Cmd {
    fn verb(&self) -> &'static str {
        match self {
            Cmd::Synth { .. } => "synth",
            Cmd::Eval { .. } => "eval",
            Cmd::Ultrafilters { .. } => "ultrafilters",
            Cmd::Check { .. } => "check",
            Cmd::Induce { .. } => "induce",
            Cmd::Represent { .. } => "represent",
            Cmd::FrameProps { .. } => "frame-props",
            Cmd::Suite { .. } => "suite",
        }
    }
}

fn load(path: &Path) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    SpecDocument::parse(&text)
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TENSEMV_WORKERS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage(format!("TENSEMV_WORKERS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::usage(e.to_string()))
}

fn run(cmd: Cmd) -> Result<Report, CliError> {
    configure_workers()?;
    match cmd {
        Cmd::Synth { r, depth, verify } => commands::synth(&r, depth, verify),
        Cmd::Eval { term, algebra, bindings } => commands::eval(&term, &algebra, &bindings),
        Cmd::Ultrafilters { algebra } => commands::ultrafilters(&algebra),
        Cmd::Check { file, names, nmax, semistate, enumerate, grid } => {
            commands::check(&load(&file)?, &names, CheckFlags { nmax, semistate, enumerate, grid })
        }
        Cmd::Induce { file, frame, m, force } => commands::induce(&load(&file)?, &frame, m, force),
        Cmd::Represent { file, names } => commands::represent(&load(&file)?, &names),
        Cmd::FrameProps { file, names } => commands::frame_props(&load(&file)?, &names),
        Cmd::Suite { name } => commands::suite(&name),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let verb = cli.cmd.verb();
    let start = Instant::now();
    match run(cli.cmd) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            if cli.json {
                print!("{}", error_json(verb, &e));
            } else {
                eprint!("{}", error_text(&e));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
