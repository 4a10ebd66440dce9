use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use quasilp::harness::io::{load_matrix, save_report};
use quasilp::{
    hirschman_kernel, run_suite, sandwiched_divergence, schatten_norm, FaithfulState, HermitianMatrix, PExponent,
    StatePair, Suite, SuiteConfig,
};

#[derive(Parser)]
#[command(name = "quasilp", version, about = "Verification harness for noncommutative L_p interpolation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// Comma-separated matrix dimensions.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Trials per dimension.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated exponents; `inf` and fractions like `1/2` allowed.
        #[arg(long, value_delimiter = ',')]
        p_grid: Option<Vec<String>>,
        /// Tolerance override `check=value`; repeatable.
        #[arg(long = "tol")]
        tolerances: Vec<String>,
        /// Full suite configuration as JSON; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sandwiched Rényi divergence of two density matrices.
    Divergence {
        #[arg(long)]
        rho: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        p: f64,
    },
    /// Schatten p-(quasi-)norm of a matrix.
    Norm {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        p: String,
    },
    /// Evaluate the Hirschman kernel.
    Kernel {
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        t: f64,
    },
}

/// Errors that exit with status 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

enum Outcome {
    Pass,
    Violation,
}

fn parse_p(s: &str) -> anyhow::Result<PExponent> {
    s.trim().parse::<PExponent>().map_err(|e| anyhow!("invalid exponent `{s}`: {e}"))
}

fn verify_config(
    suite: &str,
    dims: Option<Vec<usize>>,
    trials: Option<usize>,
    seed: u64,
    p_grid: Option<Vec<String>>,
    tolerances: &[String],
    config: Option<PathBuf>,
) -> anyhow::Result<SuiteConfig> {
    let suite: Suite = suite.parse()?;
    let mut cfg = match config {
        Some(path) => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let cfg: SuiteConfig =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if cfg.suite != suite {
                bail!("config file is for suite `{}` but --suite is `{suite}`", cfg.suite);
            }
            cfg
        }
        None => SuiteConfig::new(suite, seed),
    };
    cfg.seed = seed;
    if let Some(d) = dims {
        cfg.dims = d;
    }
    if let Some(n) = trials {
        cfg.trials = n;
    }
    if let Some(grid) = p_grid {
        cfg.p_grid = grid.iter().map(|s| parse_p(s)).collect::<anyhow::Result<_>>()?;
    }
    for item in tolerances {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("--tol expects check=value, got `{item}`"))?;
        let v: f64 = v.trim().parse().with_context(|| format!("tolerance for `{k}`"))?;
        cfg.tolerance_overrides.insert(k.trim().to_string(), v);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn load_state(path: &PathBuf) -> anyhow::Result<FaithfulState> {
    let m = load_matrix(path).with_context(|| format!("loading {}", path.display()))?;
    let h = HermitianMatrix::new(m).with_context(|| format!("{} is not Hermitian", path.display()))?;
    FaithfulState::new(h).with_context(|| format!("{} is not a faithful density matrix", path.display()))
}

fn run(command: Command) -> Result<Outcome, Usage> {
    match command {
        Command::Verify {
            suite,
            dims,
            trials,
            seed,
            p_grid,
            tolerances,
            config,
            out,
        } => {
            let cfg = verify_config(&suite, dims, trials, seed, p_grid, &tolerances, config).map_err(Usage)?;
            let report = run_suite(&cfg).map_err(|e| Usage(e.into()))?;
            for c in &report.checks {
                println!(
                    "{:<5} {:<24} max_violation={:.3e} tolerance={:.1e} samples={}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.max_violation,
                    c.tolerance,
                    c.samples
                );
            }
            println!(
                "{} {}: {} records in {:.2}s",
                if report.pass { "PASS" } else { "FAIL" },
                report.suite,
                report.records.len(),
                report.wall_time
            );
            if let Some(path) = out {
                save_report(&path, &report)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(Usage)?;
            }
            Ok(if report.pass { Outcome::Pass } else { Outcome::Violation })
        }
        Command::Divergence { rho, sigma, p } => {
            let pair = (|| -> anyhow::Result<_> {
                Ok(StatePair::new(load_state(&rho)?, load_state(&sigma)?)?)
            })()
            .map_err(Usage)?;
            let d = sandwiched_divergence(&pair, p).map_err(|e| Usage(e.into()))?;
            println!("{d:.17e}");
            Ok(Outcome::Pass)
        }
        Command::Norm { matrix, p } => {
            let p = parse_p(&p).map_err(Usage)?;
            let m = load_matrix(&matrix)
                .with_context(|| format!("loading {}", matrix.display()))
                .map_err(Usage)?;
            let n = schatten_norm(&m, p).map_err(|e| Usage(e.into()))?;
            println!("{n:.17e}");
            Ok(Outcome::Pass)
        }
        Command::Kernel { theta, t } => {
            if !(theta > 0.0 && theta < 1.0) || !t.is_finite() {
                return Err(Usage(anyhow!("need 0 < theta < 1 and finite t")));
            }
            println!("{:.17e}", hirschman_kernel(theta, t));
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
