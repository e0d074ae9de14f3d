//! Experiment configuration files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSection {
    /// `desk` or `base`.
    #[serde(default = "default_kind")]
    pub kind: String,
    pub dimensions: Vec<usize>,
    /// Seed of the problem generator (shifts and rotations).
    #[serde(default)]
    pub seed: u64,
    /// Half-width of the search box.
    #[serde(default = "default_bound")]
    pub bound: f64,
    /// Keep only problems whose name starts with one of these prefixes.
    #[serde(default)]
    pub problems: Option<Vec<String>>,
    /// Directory of transform files overriding generated data.
    #[serde(default)]
    pub transform_dir: Option<PathBuf>,
}

fn default_kind() -> String {
    "desk".into()
}

fn default_bound() -> f64 {
    100.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSection {
    #[serde(default = "default_runs")]
    pub runs: usize,
    /// `N_max = evals_per_dim * D`.
    #[serde(default)]
    pub evals_per_dim: Option<usize>,
    /// Explicit `N_max` per dimension, keyed by the dimension as a string.
    #[serde(default)]
    pub max_evals: Option<BTreeMap<String, usize>>,
    /// `N_max / D` values for the `sweep` command.
    #[serde(default)]
    pub sweep: Option<Vec<usize>>,
}

fn default_runs() -> usize {
    51
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
    #[serde(default = "default_every")]
    pub checkpoint_every: usize,
    /// Worker threads; 0 means one per core.
    #[serde(default)]
    pub threads: usize,
}

fn default_every() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: SuiteSection,
    /// Table name -> overrides. A `kind` key selects the optimizer when the
    /// table name is not itself an optimizer name.
    pub algorithms: BTreeMap<String, toml::Table>,
    pub budget: BudgetSection,
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file. Relative paths inside it are resolved against
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BenchError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        if cfg.output.dir.is_relative() {
            cfg.output.dir = base.join(&cfg.output.dir);
        }
        if let Some(dir) = &cfg.suite.transform_dir {
            if dir.is_relative() {
                cfg.suite.transform_dir = Some(base.join(dir));
            }
        }
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.suite.dimensions.is_empty() {
            return bad("suite.dimensions must not be empty".into());
        }
        if self.budget.runs == 0 {
            return bad("budget.runs must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return bad("at least one [algorithms.<name>] table is required".into());
        }
        if self.budget.evals_per_dim.is_some() && self.budget.max_evals.is_some() {
            return bad("set either budget.evals_per_dim or budget.max_evals, not both".into());
        }
        if let Some(map) = &self.budget.max_evals {
            for key in map.keys() {
                if key.parse::<usize>().is_err() {
                    return bad(format!("budget.max_evals key '{key}' is not a dimension"));
                }
            }
        }
        if self.output.checkpoint_every == 0 {
            return bad("output.checkpoint_every must be positive".into());
        }
        Ok(())
    }

    /// `N_max` for dimension `dim` under the fixed-budget rule.
    pub fn max_evals(&self, dim: usize) -> Result<usize> {
        if let Some(per_dim) = self.budget.evals_per_dim {
            return Ok(per_dim * dim);
        }
        if let Some(map) = &self.budget.max_evals {
            return map
                .get(&dim.to_string())
                .copied()
                .ok_or_else(|| BenchError::Config(format!("budget.max_evals has no entry for D = {dim}")));
        }
        Err(BenchError::Config(
            "budget needs evals_per_dim or max_evals".into(),
        ))
    }

    pub fn sweep_values(&self) -> Result<Vec<usize>> {
        let mut v = self
            .budget
            .sweep
            .clone()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| BenchError::Config("budget.sweep must list N_max/D values".into()))?;
        v.sort_unstable();
        v.dedup();
        if v.contains(&0) {
            return Err(BenchError::Config("budget.sweep values must be positive".into()));
        }
        Ok(v)
    }
}
