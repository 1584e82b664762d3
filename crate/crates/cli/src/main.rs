//! qilab: sampled energy-density averages of band-squeezed vacuum states.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.
//! A FAIL verdict in sweep output is a scientific result, not a tool
//! failure, and never affects the exit code.

mod commands;
mod config;

use clap::{Args, Parser, Subcommand};
use commands::CliError;
use config::ExperimentConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qilab",
    version,
    about = "Sampled energy-density averages of band-squeezed vacuum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct RunArgs {
    /// Config file (flat key = value lines); flags below override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// sampler.kind: two-sided-exp | lorentzian | gaussian.
    #[arg(long)]
    sampler: Option<String>,
    /// sampler.lambda1.
    #[arg(long)]
    lambda1: Option<f64>,
    /// sampler.lambda2.
    #[arg(long)]
    lambda2: Option<f64>,
    /// sampler.t0.
    #[arg(long)]
    t0: Option<f64>,
    /// sampler.tau.
    #[arg(long)]
    tau: Option<f64>,
    /// profile.kind: zero | band | constant-band.
    #[arg(long)]
    profile: Option<String>,
    /// profile.w (IR cutoff).
    #[arg(long)]
    w: Option<f64>,
    /// profile.lambda_uv (UV cutoff).
    #[arg(long)]
    lambda_uv: Option<f64>,
    /// profile.g0 (constant-band squeeze).
    #[arg(long)]
    g0: Option<f64>,
    /// sweep.grid as comma-separated UV cutoffs.
    #[arg(long)]
    grid: Option<String>,
    /// quad.rel_tol.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// quad.abs_tol.
    #[arg(long)]
    abs_tol: Option<f64>,
    /// quad.max_subdivisions.
    #[arg(long)]
    max_subdivisions: Option<usize>,
    /// verdict.tol (relative slope-agreement tolerance).
    #[arg(long)]
    verdict_tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Sampled average for one configuration, one CSV row.
    Average(RunArgs),
    /// Sweep the UV cutoff, fit the log slope, render the verdict.
    Sweep(RunArgs),
    /// Trace the pointwise density over a uniform time grid.
    DensityTrace {
        #[command(flatten)]
        run: RunArgs,
        /// Left edge of the time grid.
        #[arg(long, allow_hyphen_values = true)]
        t_min: f64,
        /// Right edge of the time grid.
        #[arg(long, allow_hyphen_values = true)]
        t_max: f64,
        /// Number of grid points (≥ 2).
        #[arg(long)]
        points: usize,
    },
    /// Check the squeeze algebra on a truncated Fock space.
    VerifyAlgebra {
        /// Squeeze strengths, comma-separated; negative values are valid.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        f_values: Vec<f64>,
        /// Fock truncation dimension.
        #[arg(long, default_value_t = 60)]
        dim: usize,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(v) = &args.sampler {
        cfg.sampler_kind = Some(v.clone());
    }
    if let Some(v) = args.lambda1 {
        cfg.lambda1 = Some(v);
    }
    if let Some(v) = args.lambda2 {
        cfg.lambda2 = Some(v);
    }
    if let Some(v) = args.t0 {
        cfg.t0 = Some(v);
    }
    if let Some(v) = args.tau {
        cfg.tau = Some(v);
    }
    if let Some(v) = &args.profile {
        cfg.profile_kind = Some(v.clone());
    }
    if let Some(v) = args.w {
        cfg.w = Some(v);
    }
    if let Some(v) = args.lambda_uv {
        cfg.lambda_uv = Some(v);
    }
    if let Some(v) = args.g0 {
        cfg.g0 = Some(v);
    }
    if let Some(v) = &args.grid {
        cfg.set("sweep.grid", v)?;
    }
    if let Some(v) = args.rel_tol {
        cfg.rel_tol = Some(v);
    }
    if let Some(v) = args.abs_tol {
        cfg.abs_tol = Some(v);
    }
    if let Some(v) = args.max_subdivisions {
        cfg.max_subdivisions = Some(v);
    }
    if let Some(v) = args.verdict_tol {
        cfg.verdict_tol = Some(v);
    }
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Average(args) => {
            let cfg = load_config(&args)?;
            let csv = commands::average(&cfg)?;
            emit(&args.out, &csv)
        }
        Command::Sweep(args) => {
            let cfg = load_config(&args)?;
            let (csv, all_points_ok) = commands::sweep_cutoffs(&cfg)?;
            emit(&args.out, &csv)?;
            if all_points_ok {
                Ok(())
            } else {
                Err(CliError::Numerical("one or more sweep points failed".into()))
            }
        }
        Command::DensityTrace {
            run,
            t_min,
            t_max,
            points,
        } => {
            let cfg = load_config(&run)?;
            let csv = commands::density_trace(&cfg, t_min, t_max, points)?;
            emit(&run.out, &csv)
        }
        Command::VerifyAlgebra { f_values, dim, out } => {
            let (table, all_ok) = commands::verify_algebra(&f_values, dim)?;
            emit(&out, &table)?;
            if all_ok {
                Ok(())
            } else {
                Err(CliError::Numerical(
                    "closed-form agreement worse than 1e-8".into(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
