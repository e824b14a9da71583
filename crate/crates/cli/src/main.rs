//! `lefforge`: Betti numbers and Lefschetz properties of determinantal
//! rings and their initial ideals, from the command line.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefforge::artinian::{Property, Ring, DEFAULT_SEED};
use lefforge::grid::GridShape;
use lefforge::FieldKind;

use report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "lefforge",
    version,
    about = "Lefschetz properties of determinantal rings"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Work over GF(p); p must be prime with 2^31 < p < 2^63.
    #[arg(long, global = true, conflicts_with = "rational", value_name = "P")]
    prime: Option<u64>,
    /// Work over the rationals.
    #[arg(long, global = true)]
    rational: bool,
    /// Seed for every random draw.
    #[arg(long, global = true, env = "LEFFORGE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random trials per Lefschetz check.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Work limit (facets, faces or subsets, depending on the command).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

impl GlobalArgs {
    pub fn field(&self) -> FieldKind {
        match (self.rational, self.prime) {
            (true, _) => FieldKind::Rational,
            (false, Some(p)) => FieldKind::Prime(p),
            (false, None) => FieldKind::default(),
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ShapeArgs {
    /// Minor size.
    #[arg(long)]
    pub t: usize,
    /// Rows.
    #[arg(long)]
    pub m: usize,
    /// Columns.
    #[arg(long)]
    pub n: usize,
}

impl ShapeArgs {
    pub fn shape(&self) -> lefforge::Result<GridShape> {
        GridShape::new(self.t, self.m, self.n)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum RingArg {
    Initial,
    Minors,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Initial => Ring::Initial,
            RingArg::Minors => Ring::Minors,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum PropertyArg {
    Wlp,
    Slp,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Property {
        match p {
            PropertyArg::Wlp => Property::Wlp,
            PropertyArg::Slp => Property::Slp,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Diagonal generators of the initial ideal.
    Ideal {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Facets of the Stanley-Reisner complex, with the determinant count.
    Facets {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Only report the counts.
        #[arg(long)]
        count_only: bool,
    },
    /// The regions V_a, the complexes Ω_a and their homology.
    Omega {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Restrict to a single region.
        #[arg(long)]
        a: Option<usize>,
    },
    /// Reduced homology of the complex or of a restriction of it.
    Homology {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Restrict to these cells, written `r,c;r,c;...` (1-based).
        #[arg(long)]
        cells: Option<String>,
        /// Restrict to the region V_a.
        #[arg(long, conflicts_with = "cells")]
        omega: Option<usize>,
    },
    /// A graded Betti number of the initial ideal.
    Betti {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Homological degree (default: the height).
        #[arg(long)]
        i: Option<usize>,
        /// Internal degree (default: height + t - 1).
        #[arg(long)]
        j: Option<usize>,
        /// Run the full Hochster sum instead of the Ω lower bound.
        #[arg(long)]
        full: bool,
    },
    /// Closed-form criteria: F value, failure certificate, theorem case.
    Criteria {
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Decide the WLP or SLP of an Artinian reduction.
    Check {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = RingArg::Initial)]
        ring: RingArg,
        #[arg(long, value_enum, default_value_t = PropertyArg::Wlp)]
        property: PropertyArg,
    },
    /// Run every check over a range of grids.
    Survey {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        max_n: usize,
        /// Skip Lefschetz checks on grids of larger height.
        #[arg(long, default_value_t = 16)]
        max_height: usize,
    },
}

/// Errors that reach `main`, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    Core(lefforge::Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<lefforge::Error> for CliError {
    fn from(e: lefforge::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "parameter",
            CliError::Io(_) => "io",
        }
    }

    fn code(&self) -> u8 {
        match self.kind() {
            "parameter" => 2,
            "budget" => 3,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        let raw = match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(s) => s.clone(),
            CliError::Io(e) => e.to_string(),
        };
        raw.replace('\n', " ")
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    g.field().validate()?;
    if let Some(k) = g.threads {
        if k == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    let text = commands::dispatch(&cli.command, g)?;
    match &g.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e.message());
            ExitCode::from(e.code())
        }
    }
}
