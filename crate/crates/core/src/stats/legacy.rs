//! Competition scoring rules kept for comparison with published tables.

use std::collections::BTreeMap;

use super::ranks::average_ranks;
use super::scores::fifty_sum;
use super::ResultsTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegacyKind {
    Cec2017,
    Cec2019,
    Cec2020,
}

impl std::str::FromStr for LegacyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cec2017" => Ok(LegacyKind::Cec2017),
            "cec2019" => Ok(LegacyKind::Cec2019),
            "cec2020" => Ok(LegacyKind::Cec2020),
            other => Err(Error::Argument(format!("unknown legacy score '{other}'"))),
        }
    }
}

/// Mean over problems of the ranks of each algorithm's mean error.
fn mean_based_ranks(table: &ResultsTable) -> Vec<f64> {
    let na = table.n_algorithms();
    let mut acc = vec![0.0; na];
    for j in 0..table.n_problems() {
        let means: Vec<f64> = (0..na)
            .map(|k| {
                let r = table.runs(k, j);
                r.iter().sum::<f64>() / r.len() as f64
            })
            .collect();
        for (a, r) in acc.iter_mut().zip(average_ranks(&means)) {
            *a += r / table.n_problems() as f64;
        }
    }
    acc
}

fn absolute_error_sums(table: &ResultsTable) -> Vec<f64> {
    (0..table.n_algorithms())
        .map(|k| (0..table.n_problems()).map(|j| table.runs(k, j).iter().sum::<f64>()).sum())
        .collect()
}

fn normalized_best_sums(table: &ResultsTable) -> Vec<f64> {
    let na = table.n_algorithms();
    let mut acc = vec![0.0; na];
    for j in 0..table.n_problems() {
        let bests: Vec<f64> = (0..na)
            .map(|k| table.runs(k, j).iter().copied().fold(f64::INFINITY, f64::min))
            .collect();
        let worst = bests.iter().copied().fold(0.0, f64::max);
        if worst < 1e-12 {
            continue;
        }
        for (a, b) in acc.iter_mut().zip(&bests) {
            *a += b / worst;
        }
    }
    acc
}

/// Absolute-error sum with mean-based ranks, for one dimension.
pub fn cec2017_score(table: &ResultsTable) -> Vec<f64> {
    fifty_sum(&absolute_error_sums(table), &mean_based_ranks(table))
}

/// Normalised best-run error with mean-based ranks, for one dimension.
pub fn cec2020_score(table: &ResultsTable) -> Vec<f64> {
    fifty_sum(&normalized_best_sums(table), &mean_based_ranks(table))
}

const DIGIT_THRESHOLDS: [f64; 11] = [1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10];

/// Largest `k <= 10` with `e < 10^-k`, or 0.
pub fn cec2019_digit_count(e: f64) -> u32 {
    DIGIT_THRESHOLDS
        .iter()
        .rposition(|t| e < *t)
        .map_or(0, |k| k as u32)
}

/// Mean digit count over the 25 smallest errors.
pub fn cec2019_digits(errors: &[f64]) -> Result<f64> {
    const BEST: usize = 25;
    if errors.len() < BEST {
        return Err(Error::Argument(format!(
            "digit score needs at least {BEST} runs, got {}",
            errors.len()
        )));
    }
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted[..BEST].iter().map(|e| cec2019_digit_count(*e) as f64).sum::<f64>() / BEST as f64)
}

/// Legacy score per algorithm across the dimension groups. The 2017 and
/// 2020 rules combine weighted components with the `50 (min/x + min/x)`
/// form; the digit score is a plain sum over problems.
pub fn legacy_components(
    kind: LegacyKind,
    groups: &BTreeMap<usize, ResultsTable>,
    weights: &BTreeMap<usize, f64>,
) -> Result<Vec<f64>> {
    let na = groups
        .values()
        .next()
        .map(ResultsTable::n_algorithms)
        .ok_or_else(|| Error::Argument("legacy score needs at least one group".into()))?;
    if kind == LegacyKind::Cec2019 {
        let mut total = vec![0.0; na];
        for t in groups.values() {
            for (k, s) in total.iter_mut().enumerate() {
                for j in 0..t.n_problems() {
                    *s += cec2019_digits(t.runs(k, j))?;
                }
            }
        }
        return Ok(total);
    }
    let mut se = vec![0.0; na];
    let mut sr = vec![0.0; na];
    for (d, t) in groups {
        let w = *weights
            .get(d)
            .ok_or_else(|| Error::Argument(format!("no weight for dimension {d}")))?;
        let e = match kind {
            LegacyKind::Cec2017 => absolute_error_sums(t),
            _ => normalized_best_sums(t),
        };
        for (k, (ek, rk)) in e.iter().zip(mean_based_ranks(t)).enumerate() {
            se[k] += w * ek;
            sr[k] += w * rk;
        }
    }
    Ok(fifty_sum(&se, &sr))
}
