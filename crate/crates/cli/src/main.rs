//! `fuzzy-dirac`: verification suites, spectrum dumps and bridge studies.
//!
//! Exit status is 0 on success, 1 when a check fails (failing residuals go
//! to stderr) or a computation errors, 2 for configuration errors.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fuzzy_dirac::dirac::CheckRow;

use config::{CommandKind, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{} check(s) failed", .0.len())]
    Suite(Vec<CheckRow>),
    #[error(transparent)]
    Core(#[from] fuzzy_dirac::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fuzzy-dirac", version, about = "Dirac operators on fuzzy spheres and their bridges")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance on eigenvalue clusters.
    #[arg(long, global = true)]
    tol_eig: Option<f64>,
    /// Tolerance on identity residuals.
    #[arg(long, global = true)]
    tol_id: Option<f64>,
    #[arg(long, global = true, value_enum)]
    emit: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Flat `key = value` file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report real runtimes instead of 0.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue clusters of D + 2 against the closed form.
    Spectrum {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        sign: Option<i8>,
    },
    /// Identity suite at level n for both spinor signs.
    Verify {
        #[arg(long)]
        n: Option<usize>,
    },
    /// L^D, L_d and L_ℓ of one element.
    Seminorm {
        #[arg(long)]
        n: Option<usize>,
        /// JSON matrix `{"rows", "cols", "data": [[re, im], ...]}`.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Covariant symbol of an element on a θ×φ grid.
    Symbol {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Bridge report at one level.
    Bridge {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Bridge reports for m = 1..m_max with trend checks.
    Converge {
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Commutator-norm identity of the linking Dirac operator.
    Linking {
        #[arg(long)]
        demo: bool,
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Generators, ladder operators and projector of an irrep.
    Irrep {
        #[arg(long)]
        n: Option<usize>,
    },
}

fn flags(cli: Cli) -> (Option<PathBuf>, RunConfig) {
    let g = cli.global;
    let mut cfg = RunConfig {
        seed: g.seed,
        tol_eig: g.tol_eig,
        tol_id: g.tol_id,
        emit: g.emit,
        out: g.out,
        threads: g.threads,
        timing: g.timing.then_some(true),
        ..Default::default()
    };
    match cli.command {
        Some(Command::Spectrum { n, sign }) => {
            cfg.command = Some(CommandKind::Spectrum);
            cfg.n = n;
            cfg.sign = sign;
        }
        Some(Command::Verify { n }) => {
            cfg.command = Some(CommandKind::Verify);
            cfg.n = n;
        }
        Some(Command::Seminorm { n, matrix, samples }) => {
            cfg.command = Some(CommandKind::Seminorm);
            cfg.n = n;
            cfg.matrix = matrix;
            cfg.samples = samples;
        }
        Some(Command::Symbol { n, matrix, grid }) => {
            cfg.command = Some(CommandKind::Symbol);
            cfg.n = n;
            cfg.matrix = matrix;
            cfg.grid = grid;
        }
        Some(Command::Bridge { m, budget }) => {
            cfg.command = Some(CommandKind::Bridge);
            cfg.m = m;
            cfg.budget = budget;
        }
        Some(Command::Converge { m_max, budget }) => {
            cfg.command = Some(CommandKind::Converge);
            cfg.m_max = m_max;
            cfg.budget = budget;
        }
        Some(Command::Linking { demo, pairs }) => {
            cfg.command = Some(CommandKind::Linking);
            cfg.demo = demo.then_some(true);
            cfg.pairs = pairs;
        }
        Some(Command::Irrep { n }) => {
            cfg.command = Some(CommandKind::Irrep);
            cfg.n = n;
        }
        None => {}
    }
    (g.config, cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (file, flags) = flags(cli);
    let base = match file {
        Some(path) => RunConfig::load(&path)?,
        None => RunConfig::default(),
    };
    let cfg = base.overlay(flags).resolve()?;
    if let Some(t) = cfg.threads {
        fuzzy_dirac::exec::set_threads(t)?;
    }
    let outcome = commands::run(&cfg)?;
    output::emit(&cfg, &outcome.artifact)?;
    if outcome.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Suite(outcome.failures))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fuzzy-dirac: {e}");
            if let CliError::Suite(rows) = &e {
                for r in rows {
                    eprintln!("  FAIL {}: {:e} > {:e}", r.name, r.value, r.tolerance);
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}
