//! One file pair per run: `run_<i>.ckpt` (columnar checkpoints) and
//! `run_<i>.meta` (TOML metadata, written last).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use arrde::trace::Checkpoint;
use arrde::Event;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

/// Metadata line excluded from byte comparisons.
pub const WALL_TIME_KEY: &str = "wall_time_s";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub run: usize,
    pub seed: u64,
    pub max_evals: usize,
    pub evaluations: usize,
    pub optimum: f64,
    pub best_value: f64,
    pub final_error: f64,
    pub restarts: usize,
    pub refinements: usize,
    #[serde(default)]
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub meta: RunMeta,
    pub checkpoints: Vec<Checkpoint>,
    pub wall_time_s: f64,
}

/// Error of a best value against the optimum, floored like result tables.
pub fn error_of(best: f64, optimum: f64) -> f64 {
    let e = best - optimum;
    if e < arrde::stats::ERROR_FLOOR {
        0.0
    } else {
        e
    }
}

pub fn record_dir(root: &Path, algorithm: &str, problem: &str) -> PathBuf {
    root.join(algorithm).join(problem)
}

pub fn meta_path(root: &Path, algorithm: &str, problem: &str, run: usize) -> PathBuf {
    record_dir(root, algorithm, problem).join(format!("run_{run}.meta"))
}

fn ckpt_path_for(meta: &Path) -> PathBuf {
    meta.with_extension("ckpt")
}

/// Writes through a temporary file and a rename so readers never see a
/// partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("")
    ));
    fs::write(&tmp, contents).map_err(BenchError::io(&tmp))?;
    fs::rename(&tmp, path).map_err(BenchError::io(path))
}

pub fn format_checkpoints(points: &[Checkpoint]) -> String {
    let mut out = String::from("# evals best_value\n");
    for c in points {
        let _ = writeln!(out, "{} {:e}", c.evals, c.best);
    }
    out
}

pub fn parse_checkpoints(text: &str, path: &Path) -> Result<Vec<Checkpoint>> {
    let bad = |line: usize| {
        BenchError::Runtime(arrde::Error::Data(format!(
            "{}:{}: malformed checkpoint line",
            path.display(),
            line + 1
        )))
    };
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let evals = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad(i))?;
        let best = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad(i))?;
        if parts.next().is_some() {
            return Err(bad(i));
        }
        out.push(Checkpoint { evals, best });
    }
    Ok(out)
}

impl RunRecord {
    /// Writes the checkpoint file, then the metadata file.
    pub fn save(&self, root: &Path) -> Result<()> {
        let dir = record_dir(root, &self.meta.algorithm, &self.meta.problem);
        fs::create_dir_all(&dir).map_err(BenchError::io(&dir))?;
        let meta = meta_path(root, &self.meta.algorithm, &self.meta.problem, self.meta.run);
        write_atomic(&ckpt_path_for(&meta), &format_checkpoints(&self.checkpoints))?;
        let mut text = toml::to_string(&self.meta)
            .map_err(|e| BenchError::Runtime(arrde::Error::Data(format!("cannot serialise record: {e}"))))?;
        // keep the timing line at the top level, ahead of the event tables
        text = format!("{WALL_TIME_KEY} = {:.6}\n{text}", self.wall_time_s);
        write_atomic(&meta, &text)
    }

    pub fn load(meta: &Path) -> Result<Self> {
        let text = fs::read_to_string(meta).map_err(BenchError::io(meta))?;
        let mut table: toml::Table = toml::from_str(&text).map_err(|e| {
            BenchError::Runtime(arrde::Error::Data(format!("{}: {e}", meta.display())))
        })?;
        let wall_time_s = table
            .remove(WALL_TIME_KEY)
            .and_then(|v| v.as_float())
            .unwrap_or(0.0);
        let parsed: RunMeta = toml::Value::Table(table)
            .try_into()
            .map_err(|e| BenchError::Runtime(arrde::Error::Data(format!("{}: {e}", meta.display()))))?;
        let ckpt = ckpt_path_for(meta);
        let text = fs::read_to_string(&ckpt).map_err(BenchError::io(&ckpt))?;
        Ok(Self {
            checkpoints: parse_checkpoints(&text, &ckpt)?,
            meta: parsed,
            wall_time_s,
        })
    }
}

/// All records below a campaign directory, sorted by algorithm, problem and
/// run.
pub fn load_records(root: &Path) -> Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for alg in sorted_dirs(root)? {
        for prob in sorted_dirs(&alg)? {
            let rd = fs::read_dir(&prob).map_err(BenchError::io(&prob))?;
            for entry in rd {
                let path = entry.map_err(BenchError::io(&prob))?.path();
                if path.extension().is_some_and(|e| e == "meta") {
                    out.push(RunRecord::load(&path)?);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (&a.meta.algorithm, &a.meta.problem, a.meta.run).cmp(&(&b.meta.algorithm, &b.meta.problem, b.meta.run))
    });
    Ok(out)
}

pub(crate) fn sorted_dirs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut v = Vec::new();
    for entry in fs::read_dir(dir).map_err(BenchError::io(dir))? {
        let path = entry.map_err(BenchError::io(dir))?.path();
        if path.is_dir() {
            v.push(path);
        }
    }
    v.sort();
    Ok(v)
}
