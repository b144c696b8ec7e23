mod commands;
mod grid;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ttk::knot::{KnotSpec, SurgerySlope};
use ttk::oracle::SearchBudget;

use crate::commands::{Failure, Report};
use crate::grid::GridRange;

#[derive(Parser, Debug)]
#[command(name = "ttk", version, about = "Knot groups, Alexander polynomials and order proofs for twisted torus knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Knot as `T[l,m;p,q]` with `q = pk ± 1`; may be repeated.
    #[arg(long, global = true)]
    spec: Vec<KnotSpec>,

    /// Ranges such as `p=2..5,k=1..3,m=1..3` (optionally `l=..`); both signs.
    #[arg(long, global = true)]
    grid: Option<GridRange>,

    /// Surgery slope `r/s`.
    #[arg(long, global = true)]
    slope: Option<SurgerySlope>,

    /// Maximum relator insertions in equality searches.
    #[arg(long, global = true, default_value_t = SearchBudget::default().depth)]
    depth: usize,

    /// Frontier kept per search level.
    #[arg(long, global = true, default_value_t = SearchBudget::default().beam)]
    beam: usize,

    /// Largest permutation degree for finite quotients.
    #[arg(long, global = true, default_value_t = SearchBudget::default().quotient_degree)]
    max_degree: usize,

    /// Bound on `n` in the bounded-`n` inequality families.
    #[arg(long, global = true, default_value_t = ttk::kernel::DEFAULT_N_MAX)]
    n_max: u32,

    /// Quotient cache directory (default `$TTK_CACHE_DIR`, else `.ttk-cache`).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Both presentations of the knot group.
    Present,
    /// Alexander polynomial by Fox calculus, with the degree-span formula.
    Alexander,
    /// Genus and L-space surgery threshold `2g - 1`.
    Genus,
    /// Whether `--slope` is at or above the L-space surgery threshold.
    LspaceRange,
    /// Certify the closed-form longitudes in the knot group.
    VerifyLongitude,
    /// Finite permutation quotients of the knot group, cached on disk.
    Quotients,
    /// Generate and check the order proof scripts.
    CheckProofs {
        /// Every script: inequalities, fixed point (both orders), key chain
        /// (at `--slope`, else the threshold slope) and final cycle.
        #[arg(long)]
        all: bool,
        /// Check a serialized script instead of generating one.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Write every generated script as JSON into this directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Run every check over a grid, one JSON line per (spec, check).
    Sweep {
        /// Leave out the per-check timing so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

pub struct Config {
    pub specs: Vec<KnotSpec>,
    pub slope: Option<SurgerySlope>,
    pub budget: SearchBudget,
    pub n_max: u32,
    pub cache: Option<PathBuf>,
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut specs = cli.spec.clone();
    if let Some(g) = &cli.grid {
        specs.extend(g.specs());
    }
    let sweep = matches!(cli.command, Command::Sweep { .. });
    let script_only = matches!(cli.command, Command::CheckProofs { script: Some(_), .. });
    if specs.is_empty() {
        if sweep {
            specs = GridRange::default().specs();
        } else if !script_only {
            eprintln!("error: give --spec or --grid");
            return ExitCode::from(2);
        }
    }
    let config = Config {
        specs,
        slope: cli.slope,
        budget: SearchBudget {
            depth: cli.depth,
            beam: cli.beam,
            max_len: None,
            quotient_degree: cli.max_degree,
        },
        n_max: cli.n_max,
        cache: cli.cache.clone(),
        format: cli.format,
    };
    let result = match &cli.command {
        Command::Present => commands::present(&config),
        Command::Alexander => commands::alexander(&config),
        Command::Genus => commands::genus(&config),
        Command::LspaceRange => commands::lspace_range(&config),
        Command::VerifyLongitude => commands::verify_longitude(&config),
        Command::Quotients => commands::quotients(&config),
        Command::CheckProofs { all, script, emit } => {
            commands::check_proofs(&config, *all, script.as_deref(), emit.as_deref())
        }
        Command::Sweep { no_timing } => commands::sweep(&config, !no_timing),
    };
    match result {
        Ok(report) => finish(report, config.format),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn finish(report: Report, format: Format) -> ExitCode {
    let mut out = std::io::stdout().lock();
    for record in &report.records {
        let written = match format {
            Format::Json => writeln!(out, "{}", record.json),
            Format::Text => writeln!(out, "{}", record.text),
        };
        // a closed pipe (e.g. `| head`) is not an error
        if written.is_err() {
            break;
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
