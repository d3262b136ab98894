use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weyl_bundles_cli::commands::{self, Line};
use weyl_bundles_cli::config::{preset, Config, Params};
use weyl_bundles_cli::CliResult;

/// Exact computations with generalized Weyl algebras, their Z-graded
/// extensions, line-bundle idempotents and trace pairings.
#[derive(Parser)]
#[command(name = "weylb", version)]
struct Cli {
    /// JSON parameter file
    #[arg(long, global = true, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// sphere, lens(k,l,q) or kleinian-demo (default: sphere)
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Human-readable output instead of JSON lines
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Normal form of an expression in B (x, y, z) or A (xp, xm, zp, zm)
    Normalize { expr: String },
    /// Product of two expressions
    Mul { left: String, right: String },
    /// Print the strong connection omega(N) and check that it multiplies to 1
    Connection {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Print the idempotent E(N) and check E^2 = E
    Idempotent {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Pair the trace at a root zeta with E(N); expected -N
    Chern {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Defaults to every non-zero root in the configuration
        #[arg(long)]
        zeta: Option<String>,
    },
    /// Check the trace axioms for every configured root
    TraceCheck {
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Search for a strong-grading witness of bounded size
    GradingCheck {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        bound: u32,
        /// Use the induced Z/kZ grading
        #[arg(long, conflicts_with = "veronese")]
        quotient: Option<u32>,
        /// Use the Veronese subalgebra of degrees divisible by k
        #[arg(long)]
        veronese: Option<u32>,
    },
    /// Check the relations in a truncated orbit representation
    RepCheck {
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        dim: usize,
        /// Override q = q_plus * q_minus; must lie in (0, 1)
        #[arg(long)]
        q: Option<String>,
        /// Directory to write x.csv, y.csv, z.csv
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the full acceptance suite
    VerifyAll,
}

fn load_params(cli: &Cli) -> CliResult<Params> {
    match (&cli.config, &cli.preset) {
        (Some(path), _) => Config::load(path)?.resolve(&path.display().to_string()),
        (None, Some(name)) => preset(name),
        (None, None) => preset("sphere"),
    }
}

fn run(cli: &Cli) -> CliResult<Vec<Line>> {
    if let Cmd::VerifyAll = cli.cmd {
        return Ok(commands::verify_all(cli.text));
    }
    let params = load_params(cli)?;
    match &cli.cmd {
        Cmd::Normalize { expr } => commands::normalize(&params, expr),
        Cmd::Mul { left, right } => commands::mul(&params, left, right),
        Cmd::Connection { n } => commands::connection(&params, *n),
        Cmd::Idempotent { n } => commands::idempotent(&params, *n),
        Cmd::Chern { n, zeta } => commands::chern(&params, *n, zeta.as_deref()),
        Cmd::TraceCheck { bound } => commands::trace_check(&params, *bound),
        Cmd::GradingCheck { degree, bound, quotient, veronese } => {
            commands::grading_check(&params, *degree, *bound, *quotient, *veronese)
        }
        Cmd::RepCheck { zeta, dim, q, csv } => commands::rep_check(&params, zeta, *dim, q.as_deref(), csv.as_deref()),
        Cmd::VerifyAll => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(lines) => {
            for line in &lines {
                println!("{}", line.render(cli.text));
            }
            if lines.iter().all(Line::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.text {
                eprintln!("error: {e}");
            } else {
                eprintln!("{}", serde_json::json!({"error": e.to_string()}));
            }
            ExitCode::from(2)
        }
    }
}
