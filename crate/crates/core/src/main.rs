use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use detcone::commands::{self, CommandError, CommandOutput, Format, Semigroup};
use detcone::probe::EpsilonGrid;
use detcone::reproduce::ReproduceConfig;

#[derive(Parser)]
#[command(
    name = "detcone",
    version,
    about = "Exact and numeric tools for ratios of principal minors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: FormatArg,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    #[value(name = "E")]
    E,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemigroupArg {
    #[value(name = "H")]
    H,
    #[value(name = "E")]
    E,
    #[value(name = "D")]
    D,
    #[value(name = "K")]
    K,
}

#[derive(clap::Args)]
struct GridArgs {
    #[arg(long, default_value_t = 1e-1)]
    eps_max: f64,
    #[arg(long, default_value_t = 1e-7)]
    eps_min: f64,
    /// Number of geometrically spaced grid points.
    #[arg(long, default_value_t = 13)]
    points: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Nullity and rank of every column subset of a matrix file.
    Nullity { matrix: PathBuf },
    /// Decide membership of a ratio. Exit 0 for member, 1 for non-member.
    ///
    /// Ratios look like "{1,2}{} / {1}{2}"; R1, R2, R3, Q and E4-not-D4 name
    /// the built-in ratios. After deleting index i, indices j > i become j-1.
    Membership {
        ratio: String,
        #[arg(long, value_enum)]
        semigroup: SemigroupArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Extreme rays of E_n or D_n for n = 3 or 4.
    ExtremeRays {
        #[arg(long, value_enum)]
        system: SystemArg,
        #[arg(long)]
        n: usize,
    },
    /// Asymptotic nullity type of a polynomial matrix file.
    Asn {
        matrix: PathBuf,
        /// Also print the pairing with this ratio.
        #[arg(long)]
        ratio: Option<String>,
    },
    /// Fit the log-ratio slope along MᵀM + e·I.
    ProbeFamily {
        ratio: String,
        matrix: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Fit the log-ratio slope along P(e)ᵀP(e).
    ProbePoly {
        ratio: String,
        matrix: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Search for the largest value of a ratio over positive definite matrices.
    BoundSearch {
        ratio: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Check the Fiedler inequality and its corollary on random matrices.
    Fiedler {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Run every check. With --out DIR, writes reproduction.txt and
    /// reproduction.json there.
    Reproduce {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sample count for the bound search.
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String, CommandError> {
    Ok(std::fs::read_to_string(path)?)
}

fn grid(g: &GridArgs) -> Result<EpsilonGrid, CommandError> {
    Ok(EpsilonGrid::geometric(g.eps_max, g.eps_min, g.points)?)
}

fn run(cli: &Cli, format: Format) -> Result<CommandOutput, CommandError> {
    match &cli.command {
        Command::Nullity { matrix } => commands::nullity(&read(matrix)?, format),
        Command::Membership {
            ratio,
            semigroup,
            n,
        } => {
            let semigroup = match semigroup {
                SemigroupArg::H => Semigroup::H,
                SemigroupArg::E => Semigroup::E,
                SemigroupArg::D => Semigroup::D,
                SemigroupArg::K => Semigroup::K,
            };
            commands::membership_cmd(commands::resolve_ratio(ratio), semigroup, *n, format)
        }
        Command::ExtremeRays { system, n } => {
            let system = match system {
                SystemArg::E => "E",
                SystemArg::D => "D",
            };
            commands::extreme_rays_cmd(system, *n, format)
        }
        Command::Asn { matrix, ratio } => commands::asn_cmd(
            &read(matrix)?,
            ratio.as_deref().map(commands::resolve_ratio),
            format,
        ),
        Command::ProbeFamily {
            ratio,
            matrix,
            grid: g,
        } => commands::probe_family(
            commands::resolve_ratio(ratio),
            &read(matrix)?,
            &grid(g)?,
            format,
        ),
        Command::ProbePoly {
            ratio,
            matrix,
            grid: g,
        } => commands::probe_poly(
            commands::resolve_ratio(ratio),
            &read(matrix)?,
            &grid(g)?,
            format,
        ),
        Command::BoundSearch {
            ratio,
            n,
            seed,
            samples,
        } => {
            commands::bound_search_cmd(commands::resolve_ratio(ratio), *n, *seed, *samples, format)
        }
        Command::Fiedler { n, seed, samples } => commands::fiedler_cmd(*n, *seed, *samples, format),
        Command::Reproduce { seed, samples } => {
            let mut cfg = ReproduceConfig {
                seed: *seed,
                ..Default::default()
            };
            if let Some(s) = samples {
                cfg.bound_samples = *s;
            }
            commands::reproduce_cmd(&cfg, cli.out.as_deref(), format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let out = match run(&cli, format) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match (&cli.out, &cli.command) {
        (Some(_), Command::Reproduce { .. }) | (None, _) => print!("{}", out.text),
        (Some(path), _) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::from(out.exit_code as u8)
}
