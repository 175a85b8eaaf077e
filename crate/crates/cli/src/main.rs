//! Command-line front end: dominance checks, the refutation oracle, the
//! four application solvers, reproduction fixtures, and parameter sweeps.
//!
//! All machine output is JSON (reports) or RFC-4180 CSV (curves and
//! sweeps). Exit codes: 0 success, 1 usage or validation error, 2 a
//! reproduction fixture's documented verdict changed.

mod commands;
mod report;
mod repro;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Report;

#[derive(Parser)]
#[command(
    name = "stochord",
    version,
    about = "Dominance checks in concave stochastic order families, with application solvers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checker chain (second-order, two-hinge sufficient,
    /// optional n-hinge grid and oracle) on two distribution files.
    Check(CheckArgs),
    /// Search for a sampled generator function refuting dominance.
    Oracle(OracleArgs),
    /// Solve the two-period savings problem; with an alternative income,
    /// certify dominance and compare optimal savings.
    Savings(SavingsArgs),
    /// Decide the self-protection question for a two-point loss model.
    Protect(ProtectArgs),
    /// Solve the search-game equilibrium; with a shifted belief, certify
    /// the shift and compare match curves.
    Game(GameArgs),
    /// Check the mean bounds for a convex decreasing hinge-power function.
    Hh(HhArgs),
    /// Re-run a built-in fixture and fail (exit 2) if any documented
    /// verdict changed.
    Repro(ReproArgs),
    /// Evaluate a checker over a parameter grid and emit CSV rows.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Candidate dominant distribution (JSON file).
    #[arg(long)]
    f: PathBuf,
    /// Candidate dominated distribution (JSON file).
    #[arg(long)]
    g: PathBuf,
    /// Order interval left endpoint; defaults to the files' hull.
    #[arg(long)]
    a: Option<f64>,
    /// Order interval right endpoint; defaults to the files' hull.
    #[arg(long)]
    b: Option<f64>,
    /// Concavity degree for the oracle stage.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Hinge-product order; n >= 3 adds the grid scan to the chain.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Grid points per axis for the n >= 3 scan.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Number of sampled functions for the oracle stage (0 = skip).
    #[arg(long, default_value_t = 0)]
    oracle_samples: usize,
    #[arg(long, default_value_t = 8)]
    max_knots: usize,
    /// Oracle seed; required when --oracle-samples > 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 8)]
    max_knots: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SavingsArgs {
    /// Savings scenario JSON.
    #[arg(long)]
    scenario: PathBuf,
    /// Write an s-grid marginal profile CSV here.
    #[arg(long)]
    profile_out: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    profile_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProtectArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GameArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Write θ-grid effort and match curves here.
    #[arg(long)]
    curves_out: Option<PathBuf>,
    #[arg(long, default_value_t = 101)]
    theta_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HhArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproArgs {
    /// Fixture id: example1, example2, example3, figure1, figure2,
    /// lemma1-grid, hh-extremal, game-derived, protect-derived.
    id: String,
    /// Seed for fixtures that run the oracle (no wall-clock entropy).
    #[arg(long)]
    seed: u64,
    /// Override the figure-sourced payoff configuration.
    #[arg(long)]
    figure2_config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration JSON.
    #[arg(long)]
    config: PathBuf,
    /// CSV destination for the grid rows.
    #[arg(long)]
    out_csv: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), String> {
    let json = report.to_json();
    match out {
        Some(path) => std::fs::write(path, json).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match &cli.command {
        Command::Check(args) => {
            let report = commands::cmd_check(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
        Command::Oracle(args) => {
            let report = commands::cmd_oracle(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
        Command::Savings(args) => {
            let report = commands::cmd_savings(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
        Command::Protect(args) => {
            let report = commands::cmd_protect(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
        Command::Game(args) => {
            let report = commands::cmd_game(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
        Command::Hh(args) => {
            let report = commands::cmd_hh(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
        Command::Repro(args) => {
            let (report, changed) =
                repro::cmd_repro(&args.id, args.seed, args.figure2_config.as_deref(), args.out.as_ref())?;
            emit(&report, args.out.as_ref())?;
            Ok(if changed { 2 } else { 0 })
        }
        Command::Sweep(args) => {
            let report = commands::cmd_sweep(args)?;
            emit(&report, args.out.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
