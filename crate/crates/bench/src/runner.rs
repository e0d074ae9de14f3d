//! Campaign planning and execution.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use arrde::problems::{make_suite, SuiteConfig, SuiteKind};
use arrde::{seed_rng, Optimizer, Problem};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, SuiteSection};
use crate::error::{BenchError, Result};
use crate::records::{error_of, meta_path, RunMeta, RunRecord};
use crate::registry::Registry;

/// Environment variable overriding the configured worker count.
pub const THREADS_ENV: &str = "ARRDE_BENCH_THREADS";

/// A fully resolved run matrix.
pub struct Campaign {
    pub out_dir: PathBuf,
    pub algorithms: Vec<(String, Arc<dyn Optimizer>)>,
    pub problems: Vec<Problem>,
    /// `N_max` by dimension.
    pub budgets: BTreeMap<usize, usize>,
    pub runs: usize,
    pub checkpoint_every: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    pub algorithm: usize,
    pub problem: usize,
    pub run: usize,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` defers to the environment, then the config.
    pub threads: Option<usize>,
    /// Stop after this many new runs, leaving the campaign incomplete.
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub total: usize,
    pub skipped: usize,
    pub executed: usize,
    pub evaluations: usize,
}

/// Builds every configured problem, sorted by name.
pub fn build_problems(suite: &SuiteSection) -> Result<Vec<Problem>> {
    let kind: SuiteKind = suite.kind.parse().map_err(|e: arrde::Error| BenchError::Config(e.to_string()))?;
    let mut out = Vec::new();
    for &dim in &suite.dimensions {
        let cfg = SuiteConfig {
            kind,
            dim,
            bound: suite.bound,
            transform_dir: suite.transform_dir.clone(),
        };
        let mut rng = seed_rng(suite.seed);
        let problems = make_suite(&cfg, &mut rng).map_err(|e| BenchError::Config(format!("suite at D = {dim}: {e}")))?;
        out.extend(problems.into_iter().filter(|p| {
            suite
                .problems
                .as_ref()
                .is_none_or(|prefixes| prefixes.iter().any(|pre| p.name().starts_with(pre.as_str())))
        }));
    }
    if out.is_empty() {
        return Err(BenchError::Config("suite.problems matches no problem".into()));
    }
    out.sort_by(|a, b| a.name().cmp(b.name()));
    Ok(out)
}

pub fn build_algorithms(cfg: &ExperimentConfig, registry: &Registry) -> Result<Vec<(String, Arc<dyn Optimizer>)>> {
    cfg.algorithms
        .iter()
        .map(|(label, table)| Ok((label.clone(), registry.build(label, table)?)))
        .collect()
}

impl Campaign {
    pub fn from_config(cfg: &ExperimentConfig, registry: &Registry) -> Result<Self> {
        let budgets = cfg
            .suite
            .dimensions
            .iter()
            .map(|&d| Ok((d, cfg.max_evals(d)?)))
            .collect::<Result<_>>()?;
        Self::assemble(cfg, registry, budgets, cfg.output.dir.clone())
    }

    fn assemble(
        cfg: &ExperimentConfig,
        registry: &Registry,
        budgets: BTreeMap<usize, usize>,
        out_dir: PathBuf,
    ) -> Result<Self> {
        let c = Self {
            out_dir,
            algorithms: build_algorithms(cfg, registry)?,
            problems: build_problems(&cfg.suite)?,
            budgets,
            runs: cfg.budget.runs,
            checkpoint_every: cfg.output.checkpoint_every,
        };
        c.validate()?;
        Ok(c)
    }

    /// Rejects budgets an optimizer cannot start with.
    pub fn validate(&self) -> Result<()> {
        for p in &self.problems {
            let budget = self.budget(p);
            for (label, alg) in &self.algorithms {
                let need = alg.min_budget(p, budget);
                if budget == 0 || budget < need {
                    return Err(BenchError::Config(format!(
                        "budget {budget} for {} is below the minimum {need} of '{label}'",
                        p.name()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn budget(&self, problem: &Problem) -> usize {
        self.budgets.get(&problem.dim()).copied().unwrap_or(0)
    }

    /// Every job, ordered by algorithm label, problem name and run.
    pub fn jobs(&self) -> Vec<Job> {
        let mut v = Vec::with_capacity(self.algorithms.len() * self.problems.len() * self.runs);
        for algorithm in 0..self.algorithms.len() {
            for problem in 0..self.problems.len() {
                for run in 0..self.runs {
                    v.push(Job { algorithm, problem, run });
                }
            }
        }
        v
    }

    fn done(&self, job: &Job) -> bool {
        meta_path(
            &self.out_dir,
            &self.algorithms[job.algorithm].0,
            self.problems[job.problem].name(),
            job.run,
        )
        .exists()
    }

    /// Runs every job without a saved record. Existing records are kept.
    pub fn execute(&self, opts: &RunOptions) -> Result<RunSummary> {
        let jobs = self.jobs();
        let total = jobs.len();
        let mut pending: Vec<Job> = jobs.into_iter().filter(|j| !self.done(j)).collect();
        let skipped = total - pending.len();
        if let Some(limit) = opts.limit {
            pending.truncate(limit);
        }
        std::fs::create_dir_all(&self.out_dir).map_err(BenchError::io(&self.out_dir))?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads.unwrap_or(0))
            .build()
            .map_err(|e| BenchError::Config(format!("cannot start worker pool: {e}")))?;
        let results: Vec<Result<usize>> = pool.install(|| pending.par_iter().map(|j| self.run_job(j)).collect());
        let mut evaluations = 0;
        for r in results {
            evaluations += r?;
        }
        Ok(RunSummary {
            total,
            skipped,
            executed: pending.len(),
            evaluations,
        })
    }

    /// Executes and saves one run; returns the evaluations spent.
    pub fn run_job(&self, job: &Job) -> Result<usize> {
        let (label, alg) = &self.algorithms[job.algorithm];
        let problem = &self.problems[job.problem];
        let budget = self.budget(problem);
        let mut rng = seed_rng(job.run as u64);
        let start = Instant::now();
        let trace = alg.run(problem, budget, self.checkpoint_every, &mut rng)?;
        let wall_time_s = start.elapsed().as_secs_f64();
        let record = RunRecord {
            meta: RunMeta {
                algorithm: label.clone(),
                problem: problem.name().to_string(),
                dim: problem.dim(),
                run: job.run,
                seed: job.run as u64,
                max_evals: budget,
                evaluations: trace.evaluations,
                optimum: problem.optimum_value(),
                best_value: trace.best_value,
                final_error: error_of(trace.best_value, problem.optimum_value()),
                restarts: trace.restarts(),
                refinements: trace.refinements(),
                events: trace.events,
            },
            checkpoints: trace.checkpoints,
            wall_time_s,
        };
        record.save(&self.out_dir)?;
        Ok(trace.evaluations)
    }
}

/// One campaign per `N_max / D` value, each under `<dir>/nmd_<value>`.
pub fn sweep_campaigns(cfg: &ExperimentConfig, registry: &Registry) -> Result<Vec<(usize, Campaign)>> {
    cfg.sweep_values()?
        .into_iter()
        .map(|v| {
            let budgets = cfg.suite.dimensions.iter().map(|&d| (d, v * d)).collect();
            let dir = cfg.output.dir.join(format!("nmd_{v}"));
            Ok((v, Campaign::assemble(cfg, registry, budgets, dir)?))
        })
        .collect()
}

/// `--threads` beats the environment variable, which beats the config.
pub fn resolve_threads(flag: Option<usize>, config: usize) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| BenchError::Config(format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(config),
    }
}
