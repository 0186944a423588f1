//! `bornsim` — run outcome-selection experiments from a JSON config.
//!
//! Subcommands: `run` (one policy, one report), `born-test` (score a policy
//! against the squared-amplitude reference; exit 1 on rejection),
//! `compare-policies` (all configured policies side by side), and
//! `align-scan` (witness visibility versus mode count).
//!
//! Exit codes: 0 success, 1 born-test rejection, 2 configuration or I/O
//! problems.

mod config;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use bornsim_core::experiments::{
    alignment_scan, compare_policies, fitted_log_visibility_slope, run_trials, PolicyComparison,
    TrialReport,
};
use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{Overrides, ResolvedConfig};
use output::{config_hash, write_csv, write_json};

/// Significance level of the born-test verdict: the run is rejected when
/// the chi-square p-value drops to this level or below.
const BORN_ALPHA: f64 = 1e-3;

#[derive(Debug)]
enum CliError {
    /// Malformed or inconsistent configuration.
    Config(String),
    /// Filesystem trouble.
    Io(String),
    /// An error surfaced by the simulation library.
    Core(bornsim_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "bornsim", version, about = "Outcome-selection experiments on branching measurement chains")]
struct Cli {
    /// Path to the JSON config file (required by every subcommand).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the config's root seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the config's output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override the config's trial count.
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Override the config's policy (single-policy subcommands only).
    #[arg(long, global = true)]
    policy: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one policy and write its trial report (JSON + CSV).
    Run,
    /// Score one policy against the squared-amplitude reference; exits 1
    /// when the chi-square test rejects.
    BornTest,
    /// Run every configured policy on the same tree and report pairwise
    /// distances.
    ComparePolicies,
    /// Scan interference visibility against the witness mode count.
    AlignScan,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    let config_path = cli.config.ok_or_else(|| {
        CliError::Config("--config <path> is required (see --help)".into())
    })?;
    let overrides = Overrides {
        seed: cli.seed,
        out: cli.out,
        trials: cli.trials,
        policy: cli.policy,
    };
    let resolved = config::load(&config_path, &overrides)?;
    match cli.command {
        Command::Run => cmd_run(&resolved),
        Command::BornTest => cmd_born_test(&resolved),
        Command::ComparePolicies => cmd_compare(&resolved),
        Command::AlignScan => cmd_align_scan(&resolved),
    }
}

#[derive(Serialize)]
struct RunArtifact<'a> {
    seed: u64,
    config_hash: &'a str,
    config: &'a ResolvedConfig,
    report: &'a TrialReport,
}

fn cmd_run(config: &ResolvedConfig) -> Result<ExitCode, CliError> {
    let tree = config.build_tree()?;
    let policy = config.build_policy(&config.policy)?;
    let report =
        run_trials(&tree, &policy, config.trials, config.seed).map_err(CliError::Core)?;
    let hash = config_hash(config);
    let json_path = config.out.join("run.json");
    let csv_path = config.out.join("run.csv");
    write_json(
        &json_path,
        &RunArtifact {
            seed: config.seed,
            config_hash: &hash,
            config,
            report: &report,
        },
    )?;
    write_csv(&csv_path, &[&report], config.seed, &hash)?;
    println!(
        "wrote {} and {} (policy={}, trials={}, p={})",
        json_path.display(),
        csv_path.display(),
        report.policy,
        report.n_trials,
        report.p_value
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BornTestArtifact<'a> {
    seed: u64,
    config_hash: &'a str,
    alpha: f64,
    verdict: &'static str,
    config: &'a ResolvedConfig,
    report: &'a TrialReport,
}

fn cmd_born_test(config: &ResolvedConfig) -> Result<ExitCode, CliError> {
    let tree = config.build_tree()?;
    let policy = config.build_policy(&config.policy)?;
    let report =
        run_trials(&tree, &policy, config.trials, config.seed).map_err(CliError::Core)?;
    let rejected = report.p_value <= BORN_ALPHA;
    let verdict = if rejected { "rejected" } else { "born-compatible" };
    let hash = config_hash(config);
    let json_path = config.out.join("born_test.json");
    let csv_path = config.out.join("born_test.csv");
    write_json(
        &json_path,
        &BornTestArtifact {
            seed: config.seed,
            config_hash: &hash,
            alpha: BORN_ALPHA,
            verdict,
            config,
            report: &report,
        },
    )?;
    write_csv(&csv_path, &[&report], config.seed, &hash)?;
    println!(
        "verdict: {verdict} (policy={}, trials={}, chi2={}, p={}, alpha={BORN_ALPHA})",
        report.policy, report.n_trials, report.chi_square, report.p_value
    );
    Ok(if rejected {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct CompareArtifact<'a> {
    seed: u64,
    config_hash: &'a str,
    config: &'a ResolvedConfig,
    comparison: &'a PolicyComparison,
}

fn cmd_compare(config: &ResolvedConfig) -> Result<ExitCode, CliError> {
    let tree = config.build_tree()?;
    let policies = config
        .policies
        .iter()
        .map(|name| config.build_policy(name))
        .collect::<Result<Vec<_>, _>>()?;
    let comparison = compare_policies(&tree, &policies, config.trials, config.seed)
        .map_err(CliError::Core)?;
    let hash = config_hash(config);
    let json_path = config.out.join("compare.json");
    let csv_path = config.out.join("compare.csv");
    write_json(
        &json_path,
        &CompareArtifact {
            seed: config.seed,
            config_hash: &hash,
            config,
            comparison: &comparison,
        },
    )?;
    let reports: Vec<&TrialReport> = comparison.reports.iter().collect();
    write_csv(&csv_path, &reports, config.seed, &hash)?;
    println!(
        "wrote {} and {} ({} policies, trials={})",
        json_path.display(),
        csv_path.display(),
        comparison.reports.len(),
        config.trials
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ScanPoint {
    n_modes: usize,
    visibility: f64,
}

#[derive(Serialize)]
struct AlignScanArtifact<'a> {
    config_hash: &'a str,
    config: &'a ResolvedConfig,
    scan: Vec<ScanPoint>,
    fitted_log_slope: f64,
    expected_log_slope: f64,
}

fn cmd_align_scan(config: &ResolvedConfig) -> Result<ExitCode, CliError> {
    let eps = config.witness.epsilon;
    let n_max = config.witness.n_modes;
    let scan = alignment_scan(eps, n_max).map_err(CliError::Core)?;
    let slope = fitted_log_visibility_slope(&scan).map_err(CliError::Core)?;
    let hash = config_hash(config);
    let json_path = config.out.join("align_scan.json");
    write_json(
        &json_path,
        &AlignScanArtifact {
            config_hash: &hash,
            config,
            scan: scan
                .iter()
                .map(|&(n_modes, visibility)| ScanPoint {
                    n_modes,
                    visibility,
                })
                .collect(),
            fitted_log_slope: slope,
            expected_log_slope: eps.ln(),
        },
    )?;
    println!(
        "wrote {} (epsilon={eps}, n_modes<={n_max}, fitted log-slope={slope})",
        json_path.display()
    );
    Ok(ExitCode::SUCCESS)
}
