//! `thdist`: transport information Hessian distances between 1-D densities.

mod commands;
mod config;
mod error;
mod io;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig};

#[derive(Parser)]
#[command(
    name = "thdist",
    version,
    about = "Hessian distances of f-entropies between 1-D probability densities",
    after_help = "Input formats: grid CSV with header `x,p` (uniform nodes), or sample CSV \
                  with header `sample`. Set RUST_LOG=debug for progress logging."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distances between two densities (both Hessian formulations,
    /// Wasserstein, Hellinger)
    Dist(CommonArgs),
    /// Symmetric pairwise Hessian distance matrix over all inputs
    Matrix(CommonArgs),
    /// Hessian geodesic from the first input (t = 0) to the second (t = 1)
    Geodesic(CommonArgs),
    /// Taylor check of the Hessian bilinear form on one density
    HessianCheck(CommonArgs),
    /// Closed-form h versus its defining quadrature
    EntropyTable(CommonArgs),
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let (args, run): (CommonArgs, fn(&RunConfig) -> error::Result<()>) = match cli.command {
        Command::Dist(a) => (a, commands::dist),
        Command::Matrix(a) => (a, commands::matrix),
        Command::Geodesic(a) => (a, commands::geodesic_cmd),
        Command::HessianCheck(a) => (a, commands::hessian_check),
        Command::EntropyTable(a) => (a, commands::entropy_table),
    };
    let outcome = RunConfig::resolve(args).and_then(|config| run(&config));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("thdist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
