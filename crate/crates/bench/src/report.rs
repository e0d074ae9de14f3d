//! Error tables, score reports and budget-sweep curves built from saved
//! records only.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use arrde::stats::{score_report, LegacyKind, ProblemInfo, ResultsTable, SuiteWeights};

use crate::error::{BenchError, Result};
use crate::format::{column_ranks, sci};
use crate::records::{load_records, sorted_dirs, RunRecord};

/// A report as aligned text plus comma-separated rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub csv: String,
}

impl Report {
    /// Writes `<stem>.txt` and `<stem>.csv` into `dir`.
    pub fn save(&self, dir: &Path, stem: &str) -> Result<()> {
        crate::records::write_atomic(&dir.join(format!("{stem}.txt")), &self.text)?;
        crate::records::write_atomic(&dir.join(format!("{stem}.csv")), &self.csv)
    }
}

fn data_error(msg: String) -> BenchError {
    BenchError::Runtime(arrde::Error::Data(msg))
}

/// Arranges records into a table; every (algorithm, problem, run) cell must
/// be present.
pub fn results_table(records: &[RunRecord]) -> Result<ResultsTable> {
    if records.is_empty() {
        return Err(data_error("no run records found".into()));
    }
    let algorithms: BTreeSet<&str> = records.iter().map(|r| r.meta.algorithm.as_str()).collect();
    let runs: BTreeSet<usize> = records.iter().map(|r| r.meta.run).collect();
    let mut problems: BTreeMap<&str, ProblemInfo> = BTreeMap::new();
    let mut cells: BTreeMap<(&str, &str, usize), f64> = BTreeMap::new();
    for r in records {
        problems.entry(r.meta.problem.as_str()).or_insert_with(|| ProblemInfo {
            name: r.meta.problem.clone(),
            dim: r.meta.dim,
            optimum: r.meta.optimum,
        });
        cells.insert((&r.meta.algorithm, &r.meta.problem, r.meta.run), r.meta.final_error);
    }
    let mut missing = Vec::new();
    let mut errors = Vec::with_capacity(algorithms.len());
    for &a in &algorithms {
        let mut per_problem = Vec::with_capacity(problems.len());
        for &p in problems.keys() {
            let mut v = Vec::with_capacity(runs.len());
            for &i in &runs {
                match cells.get(&(a, p, i)) {
                    Some(e) => v.push(*e),
                    None => missing.push(format!("{a}/{p} run {i}")),
                }
            }
            per_problem.push(v);
        }
        errors.push(per_problem);
    }
    if !missing.is_empty() {
        let shown = missing.len().min(20);
        let mut msg = format!("{} missing cells: {}", missing.len(), missing[..shown].join(", "));
        if missing.len() > shown {
            let _ = write!(msg, ", and {} more", missing.len() - shown);
        }
        return Err(data_error(msg));
    }
    Ok(ResultsTable::new(
        algorithms.into_iter().map(String::from).collect(),
        problems.into_values().collect(),
        errors,
    )?)
}

/// Best, mean and population standard deviation of final errors.
pub fn emit_error_table(records: &[RunRecord]) -> Result<Report> {
    let table = results_table(records)?;
    let name_w = table.problems().iter().map(|p| p.name.len()).max().unwrap_or(0).max(7);
    let mut text = String::new();
    let _ = write!(text, "{:name_w$}", "problem");
    for a in table.algorithms() {
        let _ = write!(text, "  {a:<32}");
    }
    let _ = write!(text, "\n{:name_w$}", "");
    for _ in table.algorithms() {
        let _ = write!(text, "  {:<10}{:<11}{:<11}", "best", "mean", "std");
    }
    text.push('\n');
    let mut csv = String::from("problem,dim,algorithm,best,mean,std\n");
    for (j, p) in table.problems().iter().enumerate() {
        let _ = write!(text, "{:name_w$}", p.name);
        for (k, a) in table.algorithms().iter().enumerate() {
            let (best, mean, std) = table.summary(k, j);
            let _ = write!(text, "  {:<10} {:<10} {:<10}", sci(best), sci(mean), sci(std));
            let _ = writeln!(csv, "{},{},{a},{best:e},{mean:e},{std:e}", p.name, p.dim);
        }
        text = text.trim_end().to_string();
        text.push('\n');
    }
    Ok(Report { text, csv })
}

/// Preset matching the dimensions present, or uniform weights.
pub fn detect_weights(dims: &BTreeSet<usize>) -> SuiteWeights {
    let within = |set: &[usize]| dims.iter().all(|d| set.contains(d));
    if within(&[10, 20]) {
        SuiteWeights::Cec2022
    } else if within(&[10, 30, 50, 100]) {
        SuiteWeights::Cec2017
    } else if within(&[5, 10, 15, 20]) {
        SuiteWeights::Cec2020
    } else {
        SuiteWeights::Uniform
    }
}

#[derive(Debug, Clone)]
pub struct ScoreOptions {
    /// `None` picks a preset from the dimensions present.
    pub weights: Option<SuiteWeights>,
    pub reference: Option<String>,
    pub legacy: Option<LegacyKind>,
    pub zero_guard: Option<f64>,
    pub alpha: f64,
}

impl Default for ScoreOptions {
    fn default() -> Self {
        Self {
            weights: None,
            reference: None,
            legacy: None,
            zero_guard: None,
            alpha: 0.05,
        }
    }
}

fn weights_label(w: &SuiteWeights) -> String {
    match w {
        SuiteWeights::Custom(_) => "custom".into(),
        other => format!("{other:?}").to_ascii_lowercase(),
    }
}

fn legacy_label(kind: LegacyKind) -> &'static str {
    match kind {
        LegacyKind::Cec2017 => "cec2017",
        LegacyKind::Cec2019 => "cec2019",
        LegacyKind::Cec2020 => "cec2020",
    }
}

/// Per-dimension E, R and S with ranks, W/T/L against the reference and
/// the combined score.
pub fn emit_score_report(records: &[RunRecord], opts: &ScoreOptions) -> Result<Report> {
    let table = results_table(records)?;
    let dims: BTreeSet<usize> = table.problems().iter().map(|p| p.dim).collect();
    let weights = opts.weights.clone().unwrap_or_else(|| detect_weights(&dims));
    let report = score_report(
        &table,
        &weights,
        opts.zero_guard,
        opts.reference.as_deref(),
        opts.legacy,
        opts.alpha,
    )?;
    let resolved = weights.weights(&dims.iter().copied().collect::<Vec<_>>())?;
    let alg_w = report.algorithms.iter().map(String::len).max().unwrap_or(0).max(9);
    let cell = |v: f64, r: usize| format!("{v:.3} ({r})");

    let mut text = String::new();
    let listed: Vec<String> = resolved.iter().map(|(d, w)| format!("D{d} = {w}")).collect();
    let _ = writeln!(text, "weights: {} ({})", weights_label(&weights), listed.join(", "));
    if let Some(r) = &report.reference {
        let _ = writeln!(text, "reference: {r}");
    }
    let mut csv = String::from("scope,algorithm,metric,value,rank\n");

    for (d, (e, r)) in &report.per_dim {
        let s = &report.combined.per_dim[d];
        let (re, rr, rs) = (column_ranks(e, false), column_ranks(r, false), column_ranks(s, true));
        let _ = writeln!(text, "\nD = {d}");
        let _ = write!(text, "{:alg_w$}  {:>14}  {:>14}  {:>14}", "algorithm", "E", "R", "S");
        let wtl = report.wtl.get(d);
        if wtl.is_some() {
            let _ = write!(text, "  {:>10}", "W/T/L");
        }
        text.push('\n');
        for (k, a) in report.algorithms.iter().enumerate() {
            let _ = write!(
                text,
                "{a:alg_w$}  {:>14}  {:>14}  {:>14}",
                cell(e[k], re[k]),
                cell(r[k], rr[k]),
                cell(s[k], rs[k])
            );
            for (metric, v, rank) in [("E", e[k], re[k]), ("R", r[k], rr[k]), ("S", s[k], rs[k])] {
                let _ = writeln!(csv, "D{d},{a},{metric},{v:e},{rank}");
            }
            if let Some(w) = wtl {
                let w = &w[k];
                let _ = write!(text, "  {:>10}", format!("{}/{}/{}", w.wins, w.ties, w.losses));
                for (metric, v) in [("W", w.wins), ("T", w.ties), ("L", w.losses)] {
                    let _ = writeln!(csv, "D{d},{a},{metric},{v},");
                }
            }
            text.push('\n');
        }
    }

    let c = &report.combined;
    let (re, rr, rt) = (
        column_ranks(&c.s_e, false),
        column_ranks(&c.s_r, false),
        column_ranks(&c.s_tot, true),
    );
    let _ = writeln!(text, "\ncombined");
    let _ = write!(text, "{:alg_w$}  {:>14}  {:>14}  {:>14}", "algorithm", "S_E", "S_R", "S_tot");
    let legacy = report.legacy.as_ref().map(|(kind, v)| (legacy_label(*kind), v, column_ranks(v, true)));
    if let Some((label, _, _)) = &legacy {
        let _ = write!(text, "  {:>16}", label);
    }
    text.push('\n');
    for (k, a) in report.algorithms.iter().enumerate() {
        let _ = write!(
            text,
            "{a:alg_w$}  {:>14}  {:>14}  {:>14}",
            format!("{} ({})", sci(c.s_e[k]), re[k]),
            format!("{} ({})", sci(c.s_r[k]), rr[k]),
            cell(c.s_tot[k], rt[k])
        );
        for (metric, v, rank) in [("S_E", c.s_e[k], re[k]), ("S_R", c.s_r[k], rr[k]), ("S_tot", c.s_tot[k], rt[k])] {
            let _ = writeln!(csv, "all,{a},{metric},{v:e},{rank}");
        }
        if let Some((label, v, ranks)) = &legacy {
            let _ = write!(text, "  {:>16}", cell(v[k], ranks[k]));
            let _ = writeln!(csv, "all,{a},{label},{:e},{}", v[k], ranks[k]);
        }
        text.push('\n');
    }
    Ok(Report { text, csv })
}

/// Records of a sweep directory keyed by `N_max / D`.
pub fn load_sweep(root: &Path) -> Result<BTreeMap<usize, Vec<RunRecord>>> {
    let mut out = BTreeMap::new();
    for dir in sorted_dirs(root)? {
        let value = dir
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(|n| n.strip_prefix("nmd_"))
            .and_then(|v| v.parse::<usize>().ok());
        if let Some(v) = value {
            out.insert(v, load_records(&dir)?);
        }
    }
    if out.is_empty() {
        return Err(data_error(format!("no nmd_<value> campaigns under {}", root.display())));
    }
    Ok(out)
}

/// `(N_max / D, S_tot)` pairs per algorithm, ordered by budget.
pub fn emit_budget_sweep(groups: &BTreeMap<usize, Vec<RunRecord>>, opts: &ScoreOptions) -> Result<Report> {
    let mut rows: Vec<(usize, String, f64)> = Vec::new();
    for (&nmd, records) in groups {
        let table = results_table(records)?;
        let dims: BTreeSet<usize> = table.problems().iter().map(|p| p.dim).collect();
        let weights = opts.weights.clone().unwrap_or_else(|| detect_weights(&dims));
        let report = score_report(&table, &weights, opts.zero_guard, None, None, opts.alpha)?;
        for (a, s) in report.algorithms.iter().zip(&report.combined.s_tot) {
            rows.push((nmd, a.clone(), *s));
        }
    }
    let mut csv = String::from("nmd,algorithm,s_tot\n");
    let mut by_alg: BTreeMap<&str, Vec<(usize, f64)>> = BTreeMap::new();
    for (nmd, a, s) in &rows {
        let _ = writeln!(csv, "{nmd},{a},{s:e}");
        by_alg.entry(a).or_default().push((*nmd, *s));
    }
    let mut text = String::from("S_tot by N_max/D\n");
    for (a, points) in by_alg {
        let pts: Vec<String> = points.iter().map(|(n, s)| format!("{n}: {s:.3}")).collect();
        let _ = writeln!(text, "{a}: {}", pts.join(", "));
    }
    Ok(Report { text, csv })
}
