use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arrde::problems::{make_suite, SuiteConfig, SuiteKind};
use arrde::seed_rng;
use arrde::stats::{LegacyKind, SuiteWeights};
use arrde_bench::config::ExperimentConfig;
use arrde_bench::records::load_records;
use arrde_bench::registry::Registry;
use arrde_bench::report::{emit_budget_sweep, emit_error_table, emit_score_report, load_sweep, ScoreOptions};
use arrde_bench::runner::{resolve_threads, sweep_campaigns, Campaign, RunOptions};
use arrde_bench::{BenchError, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arrde-bench", version, about = "Run and score optimizer benchmark campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every missing (algorithm, problem, run) record of a campaign.
    Run {
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        /// Stop after this many new runs.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Score a results directory.
    Score {
        dir: PathBuf,
        #[command(flatten)]
        score: ScoreArgs,
    },
    /// Best/mean/std error table of a results directory.
    Table { dir: PathBuf },
    /// Run a budget sweep and write its S_tot curve.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        score: ScoreArgs,
    },
    ListAlgorithms,
    ListProblems {
        #[arg(long, default_value = "desk")]
        kind: String,
        #[arg(long = "dim", default_values_t = [10usize])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ScoreArgs {
    /// Algorithm the W/T/L columns compare against.
    #[arg(long)]
    reference: Option<String>,
    #[arg(long)]
    legacy: Option<LegacyKind>,
    /// cec2017, cec2020, cec2022, cec2011, uniform or ascending.
    #[arg(long)]
    weights: Option<SuiteWeights>,
    /// Denominator used for the relative error when f* = 0.
    #[arg(long)]
    zero_guard: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

impl ScoreArgs {
    fn options(&self) -> ScoreOptions {
        ScoreOptions {
            weights: self.weights.clone(),
            reference: self.reference.clone(),
            legacy: self.legacy,
            zero_guard: self.zero_guard,
            alpha: self.alpha,
        }
    }
}

fn run_options(threads: Option<usize>, cfg: &ExperimentConfig, limit: Option<usize>) -> Result<RunOptions> {
    Ok(RunOptions {
        threads: Some(resolve_threads(threads, cfg.output.threads)?),
        limit,
    })
}

fn require_dir(dir: &Path) -> Result<()> {
    if dir.is_dir() {
        Ok(())
    } else {
        Err(BenchError::Config(format!("results directory {} does not exist", dir.display())))
    }
}

fn execute(cmd: Command) -> Result<()> {
    let registry = Registry::builtin();
    match cmd {
        Command::Run { config, threads, limit } => {
            let cfg = ExperimentConfig::load(&config)?;
            let campaign = Campaign::from_config(&cfg, &registry)?;
            let s = campaign.execute(&run_options(threads, &cfg, limit)?)?;
            println!(
                "{} runs: {} executed, {} already present, {} evaluations -> {}",
                s.total,
                s.executed,
                s.skipped,
                s.evaluations,
                campaign.out_dir.display()
            );
        }
        Command::Score { dir, score } => {
            require_dir(&dir)?;
            let report = emit_score_report(&load_records(&dir)?, &score.options())?;
            report.save(&dir, "scores")?;
            print!("{}", report.text);
        }
        Command::Table { dir } => {
            require_dir(&dir)?;
            let report = emit_error_table(&load_records(&dir)?)?;
            report.save(&dir, "errors")?;
            print!("{}", report.text);
        }
        Command::Sweep { config, threads, score } => {
            let cfg = ExperimentConfig::load(&config)?;
            let campaigns = sweep_campaigns(&cfg, &registry)?;
            let opts = run_options(threads, &cfg, None)?;
            for (nmd, c) in &campaigns {
                let s = c.execute(&opts)?;
                println!("N_max/D = {nmd}: {} executed, {} already present", s.executed, s.skipped);
            }
            let report = emit_budget_sweep(&load_sweep(&cfg.output.dir)?, &score.options())?;
            report.save(&cfg.output.dir, "sweep")?;
            print!("{}", report.text);
        }
        Command::ListAlgorithms => {
            for name in registry.names() {
                println!("{name}");
            }
        }
        Command::ListProblems { kind, dims, seed } => {
            let kind: SuiteKind = kind.parse().map_err(|e: arrde::Error| BenchError::Config(e.to_string()))?;
            for dim in dims {
                let cfg = SuiteConfig {
                    kind,
                    ..SuiteConfig::desk(dim)
                };
                for p in make_suite(&cfg, &mut seed_rng(seed))? {
                    println!("{}\t{:?}\t{}", p.name(), p.category(), p.optimum_value());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("arrde-bench: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
