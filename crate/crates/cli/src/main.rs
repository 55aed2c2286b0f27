use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jordanis_cli::commands::{self, CurvatureFlags, Settings};

/// Jordan algebra structure, curvature and Einstein metric analysis.
#[derive(Parser, Debug)]
#[command(name = "jordanis", version)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Residual tolerance used by every check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for the sampling steps.
    #[arg(long, global = true, env = "JORDANIS_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural checks on an algebra file.
    Validate { file: PathBuf },
    /// Connection, curvature and Ricci data for an algebra file and its metric.
    Curvature {
        file: PathBuf,
        #[arg(long)]
        ricci: bool,
        #[arg(long)]
        scalar: bool,
        #[arg(long)]
        moment_map: bool,
        /// Jordan sectional curvature of the basis pair i,j (1-based).
        #[arg(long, value_name = "I,J", value_parser = parse_pair)]
        sectional: Option<(usize, usize)>,
    },
    /// Einstein deformation of the canonical metric on a classical algebra.
    Einstein {
        family: String,
        n: usize,
        /// Tabulate (t, residual, sc) for `k` values of t in [a, b].
        #[arg(long, num_args = 3, value_names = ["A", "B", "K"], allow_negative_numbers = true)]
        scan: Option<Vec<String>>,
    },
    /// Certificate that a metric on a nilpotent Jordan algebra is not Einstein.
    Nilcert { file: PathBuf },
    /// Build a classical algebra and write it as an algebra file.
    Classical {
        family: String,
        n: usize,
        #[arg(long, value_name = "FILE")]
        emit: PathBuf,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected i,j")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t}: {e}"));
    Ok((p(a)?, p(b)?))
}

fn parse_scan(v: &[String]) -> Result<(f64, f64, usize), String> {
    let f = |t: &str| t.parse::<f64>().map_err(|e| format!("--scan {t}: {e}"));
    let k = v[2].parse::<usize>().map_err(|e| format!("--scan {}: {e}", v[2]))?;
    Ok((f(&v[0])?, f(&v[1])?, k))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(2);
    }
    let s = Settings {
        tol: cli.tol,
        seed: cli.seed,
    };
    let result = match &cli.command {
        Command::Validate { file } => commands::validate(file, &s),
        Command::Curvature {
            file,
            ricci,
            scalar,
            moment_map,
            sectional,
        } => {
            let flags = CurvatureFlags {
                ricci: *ricci,
                scalar: *scalar,
                moment_map: *moment_map,
                sectional: *sectional,
            };
            commands::curvature(file, &flags, &s)
        }
        Command::Einstein { family, n, scan } => match scan.as_deref().map(parse_scan).transpose() {
            Ok(scan) => commands::einstein(family, *n, scan, &s),
            Err(e) => Err(jordanis_cli::InputError::Spec(e)),
        },
        Command::Nilcert { file } => commands::nilcert(file, &s),
        Command::Classical { family, n, emit } => commands::classical(family, *n, emit, &s),
    };
    match result {
        Ok(out) => {
            if cli.json {
                print!("{}", out.report.to_json());
            } else {
                print!("{}", out.report.to_text());
            }
            if let (true, Some(e)) = (cli.json, &out.report.error) {
                eprintln!("error: {e}");
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
