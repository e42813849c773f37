use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use jchm_core::cli::{self, OutputFormat, Table};
use jchm_core::ed::{Boundary, EdOptions};
use jchm_core::phase::CriticalSearch;
use jchm_core::{Error, ExcitationKind};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_CROSSING: u8 = 3;
const EXIT_SOLVER: u8 = 4;
const EXIT_RESOURCE: u8 = 5;
const EXIT_CHECK_FAILED: u8 = 6;

/// Mott-lobe phase diagram of the Jaynes-Cummings-Hubbard chain.
///
/// Quantities are in units of the qubit-photon coupling g unless a flag
/// says otherwise.
#[derive(Parser)]
#[command(name = "jchm", version)]
struct Args {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Record wall-clock duration in the manifest (output no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bare,
    Particle,
    Hole,
}

impl From<Kind> for ExcitationKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Bare => ExcitationKind::Bare,
            Kind::Particle => ExcitationKind::Particle,
            Kind::Hole => ExcitationKind::Hole,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Periodic,
    Open,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Periodic => Boundary::Periodic,
            BoundaryArg::Open => Boundary::Open,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dressed-state energies E_{n,-}, E_{n,+} and sin(θ/2).
    Spectrum {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        delta: f64,
        /// Absolute coupling strength.
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        /// Absolute cavity frequency.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        omega_c: f64,
        #[arg(long, default_value_t = jchm_core::spectrum::DEFAULT_N_MAX_LEVEL)]
        levels: u32,
        #[arg(long, value_enum, default_value = "bare")]
        kind: Kind,
        #[arg(long, default_value_t = 0.0)]
        j: f64,
    },
    /// Particle (upper) and hole (lower) lobe boundaries on a J/g grid.
    Boundary {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, default_value_t = 1)]
        lobe: u32,
        #[arg(long, default_value_t = 0.0)]
        j_min: f64,
        #[arg(long, default_value_t = 0.25)]
        j_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Critical hopping J_c/g where the two boundaries meet.
    Critical {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, default_value_t = 1)]
        lobe: u32,
        #[arg(long, default_value_t = 0.0)]
        j_lo: f64,
        #[arg(long, default_value_t = 2.0)]
        j_hi: f64,
        #[arg(long, default_value_t = 64)]
        scan_points: usize,
    },
    /// J_c/g as a function of Δ/g.
    Sweep {
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        delta_min: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        delta_max: f64,
        #[arg(long, default_value_t = 51)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        lobe: u32,
    },
    /// Reduction coefficients, second-neighbour cancellation and window identity.
    AnsatzCheck {
        #[arg(long, value_enum, default_value = "hole")]
        kind: Kind,
        #[arg(long, default_value_t = 8)]
        max_distance: usize,
        #[arg(long, default_value_t = 64)]
        window: usize,
        /// First seed amplitude as "re,im".
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        seed_a: String,
        /// Second seed amplitude as "re,im".
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        seed_b: String,
    },
    /// Exact-diagonalization chemical potentials of a finite chain.
    Ed {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 0.0)]
        j: f64,
    },
    /// Ansatz and exact-diagonalization chemical potentials side by side.
    EdCompare {
        #[command(flatten)]
        chain: ChainArgs,
        /// Comma-separated J/g values.
        #[arg(long, default_value = "0,0.05,0.1,0.15")]
        j_grid: String,
    },
}

#[derive(clap::Args)]
struct ChainArgs {
    #[arg(long, default_value_t = 4)]
    sites: usize,
    #[arg(long, default_value_t = 3)]
    n_max: u8,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    delta: f64,
    #[arg(long, value_enum, default_value = "periodic")]
    boundary: BoundaryArg,
    #[arg(long, default_value_t = 1)]
    filling: usize,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::OverflowGuard { .. } => EXIT_USAGE,
        Error::NoCrossing { .. } => EXIT_NO_CROSSING,
        Error::Solver { .. } | Error::SectorLeak { .. } => EXIT_SOLVER,
        Error::Resource { .. } => EXIT_RESOURCE,
    }
}

fn run(command: Command) -> Result<(Table, bool), Error> {
    let ok = |t: Table| Ok((t, true));
    match command {
        Command::Spectrum { delta, g, omega_c, levels, kind, j } => {
            ok(cli::spectrum_table(omega_c, g, delta, levels, kind.into(), j)?)
        }
        Command::Boundary { delta, lobe, j_min, j_max, steps } => {
            ok(cli::boundary_table(delta, lobe, j_min, j_max, steps)?)
        }
        Command::Critical { delta, lobe, j_lo, j_hi, scan_points } => {
            let search = CriticalSearch { j_lo, j_hi, scan_points };
            ok(cli::critical_table(delta, lobe, &search)?)
        }
        Command::Sweep { delta_min, delta_max, steps, lobe } => {
            ok(cli::sweep_table(delta_min, delta_max, steps, lobe)?)
        }
        Command::AnsatzCheck { kind, max_distance, window, seed_a, seed_b } => {
            let seeds = [cli::parse_complex(&seed_a)?, cli::parse_complex(&seed_b)?];
            cli::ansatz_table(kind.into(), max_distance, window, seeds)
        }
        Command::Ed { chain, j } => {
            let spec = cli::chain_in_units_of_g(chain.sites, chain.n_max, chain.boundary.into(), j, chain.delta)?;
            ok(cli::ed_table(&spec, chain.filling, &EdOptions::from_env()?)?)
        }
        Command::EdCompare { chain, j_grid } => {
            let grid = cli::parse_grid(&j_grid)?;
            let table = cli::ed_compare_table(
                chain.sites,
                chain.n_max,
                chain.boundary.into(),
                chain.delta,
                chain.filling,
                &grid,
                &EdOptions::from_env()?,
            )?;
            if let Some(trend) = table.manifest.notes.last() {
                eprintln!("{trend}");
            }
            ok(table)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let started = Instant::now();
    let (mut table, passed) = match run(args.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if args.timing {
        table.manifest.duration_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    let format = match args.format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    let text = table.render(format);
    match &args.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILURE);
            }
        }
        None => print!("{text}"),
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: a tolerance check failed");
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}
