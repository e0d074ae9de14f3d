//! Comparison statistics over a table of final errors.

mod legacy;
mod ranks;
mod scores;

pub use legacy::{cec2017_score, cec2019_digit_count, cec2019_digits, cec2020_score, legacy_components, LegacyKind};
pub use ranks::{
    average_ranks, friedman_ranks, mann_whitney_p, mann_whitney_p_exact, mann_whitney_p_normal, mann_whitney_wtl,
    wtl_table, FriedmanRanks, Outcome, Wtl,
};
pub use scores::{accuracy_scores, bounded, combined_scores, ratio_score, AccuracyScores, CombinedScores, SuiteWeights};

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Errors below this are exact hits.
pub const ERROR_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInfo {
    pub name: String,
    /// Grouping key for cross-dimension weights; the dimension for CEC-style
    /// suites.
    pub dim: usize,
    /// `f(x*)`, after best-found substitution when the optimum is unknown.
    pub optimum: f64,
}

/// Errors `e[k][j][i]` of algorithm `k` on problem `j` in run `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultsTable {
    algorithms: Vec<String>,
    problems: Vec<ProblemInfo>,
    errors: Vec<Vec<Vec<f64>>>,
}

fn floor_error(e: f64) -> f64 {
    if e < ERROR_FLOOR {
        0.0
    } else {
        e
    }
}

impl ResultsTable {
    /// Builds a table from errors; entries below the floor become 0.
    pub fn new(algorithms: Vec<String>, problems: Vec<ProblemInfo>, errors: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        if algorithms.is_empty() || problems.is_empty() {
            return Err(Error::Data("results table needs algorithms and problems".into()));
        }
        if errors.len() != algorithms.len() {
            return Err(Error::Data(format!(
                "{} algorithms but {} error blocks",
                algorithms.len(),
                errors.len()
            )));
        }
        let runs = errors[0].first().map_or(0, Vec::len);
        if runs == 0 {
            return Err(Error::Data("results table needs at least one run".into()));
        }
        for (k, per_alg) in errors.iter().enumerate() {
            if per_alg.len() != problems.len() {
                return Err(Error::Data(format!("algorithm {} lacks problems", algorithms[k])));
            }
            for (j, runs_kj) in per_alg.iter().enumerate() {
                if runs_kj.len() != runs {
                    return Err(Error::Data(format!(
                        "{} on {} has {} runs, expected {runs}",
                        algorithms[k],
                        problems[j].name,
                        runs_kj.len()
                    )));
                }
                if runs_kj.iter().any(|e| e.is_nan()) {
                    return Err(Error::Data(format!("NaN error for {} on {}", algorithms[k], problems[j].name)));
                }
            }
        }
        let errors = errors
            .into_iter()
            .map(|a| a.into_iter().map(|p| p.into_iter().map(floor_error).collect()).collect())
            .collect();
        Ok(Self {
            algorithms,
            problems,
            errors,
        })
    }

    /// Builds a table from raw final objective values `f[k][j][i]`.
    ///
    /// A `None` optimum is replaced by the best value over all algorithms
    /// and runs, so the best run on that problem has error exactly zero.
    pub fn from_values(
        algorithms: Vec<String>,
        problems: Vec<(String, usize, Option<f64>)>,
        values: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        let mut infos = Vec::with_capacity(problems.len());
        for (j, (name, dim, optimum)) in problems.into_iter().enumerate() {
            let optimum = match optimum {
                Some(v) => v,
                None => values
                    .iter()
                    .filter_map(|a| a.get(j))
                    .flatten()
                    .copied()
                    .fold(f64::INFINITY, f64::min),
            };
            infos.push(ProblemInfo { name, dim, optimum });
        }
        let errors = values
            .into_iter()
            .map(|a| {
                a.into_iter()
                    .enumerate()
                    .map(|(j, p)| {
                        let opt = infos.get(j).map_or(0.0, |i| i.optimum);
                        p.into_iter().map(|v| (v - opt).max(0.0)).collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(algorithms, infos, errors)
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn problems(&self) -> &[ProblemInfo] {
        &self.problems
    }

    pub fn n_algorithms(&self) -> usize {
        self.algorithms.len()
    }

    pub fn n_problems(&self) -> usize {
        self.problems.len()
    }

    pub fn n_runs(&self) -> usize {
        self.errors[0][0].len()
    }

    pub fn runs(&self, k: usize, j: usize) -> &[f64] {
        &self.errors[k][j]
    }

    pub fn algorithm_index(&self, name: &str) -> Option<usize> {
        self.algorithms.iter().position(|a| a == name)
    }

    /// Sub-table holding only the problems selected by `keep`.
    pub fn select_problems(&self, keep: impl Fn(&ProblemInfo) -> bool) -> Option<Self> {
        let idx: Vec<usize> = (0..self.n_problems()).filter(|&j| keep(&self.problems[j])).collect();
        if idx.is_empty() {
            return None;
        }
        Some(Self {
            algorithms: self.algorithms.clone(),
            problems: idx.iter().map(|&j| self.problems[j].clone()).collect(),
            errors: self
                .errors
                .iter()
                .map(|a| idx.iter().map(|&j| a[j].clone()).collect())
                .collect(),
        })
    }

    /// One sub-table per dimension (grouping key).
    pub fn split_by_dimension(&self) -> BTreeMap<usize, Self> {
        let mut dims: Vec<usize> = self.problems.iter().map(|p| p.dim).collect();
        dims.sort_unstable();
        dims.dedup();
        dims.into_iter()
            .filter_map(|d| self.select_problems(|p| p.dim == d).map(|t| (d, t)))
            .collect()
    }

    /// Per-run best, mean and population standard deviation of an entry.
    pub fn summary(&self, k: usize, j: usize) -> (f64, f64, f64) {
        let v = &self.errors[k][j];
        let n = v.len() as f64;
        let best = v.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = v.iter().sum::<f64>() / n;
        let var = v.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / n;
        (best, mean, var.sqrt())
    }
}

/// Everything the harness reports for one table.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub algorithms: Vec<String>,
    /// Per group: bounded accuracy `E_k` and Friedman rank `R_k`.
    pub per_dim: BTreeMap<usize, (Vec<f64>, Vec<f64>)>,
    pub combined: CombinedScores,
    pub reference: Option<String>,
    /// Per group, W/T/L of the reference against each algorithm.
    pub wtl: BTreeMap<usize, Vec<Wtl>>,
    pub legacy: Option<(LegacyKind, Vec<f64>)>,
}

/// Computes accuracy, ranks, combined scores, W/T/L and an optional legacy
/// score for `table`.
pub fn score_report(
    table: &ResultsTable,
    weights: &SuiteWeights,
    zero_guard: Option<f64>,
    reference: Option<&str>,
    legacy: Option<LegacyKind>,
    alpha: f64,
) -> Result<ScoreReport> {
    let groups = table.split_by_dimension();
    let ref_idx = match reference {
        Some(r) => Some(
            table
                .algorithm_index(r)
                .ok_or_else(|| Error::Argument(format!("reference algorithm '{r}' is not in the table")))?,
        ),
        None => None,
    };
    let mut per_dim = BTreeMap::new();
    let mut wtl = BTreeMap::new();
    for (&d, sub) in &groups {
        let acc = accuracy_scores(sub, zero_guard)?;
        let ranks = friedman_ranks(sub);
        per_dim.insert(d, (acc.overall, ranks.overall));
        if let Some(r) = ref_idx {
            wtl.insert(d, wtl_table(sub, r, alpha));
        }
    }
    let keys: Vec<usize> = per_dim.keys().copied().collect();
    let w = weights.weights(&keys)?;
    let combined = combined_scores(&per_dim, &w)?;
    let legacy = match legacy {
        Some(kind) => Some((kind, legacy_components(kind, &groups, &w)?)),
        None => None,
    };
    Ok(ScoreReport {
        algorithms: table.algorithms.clone(),
        per_dim,
        combined,
        reference: reference.map(str::to_string),
        wtl,
        legacy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_and_shape() {
        let p = |n: &str| ProblemInfo {
            name: n.into(),
            dim: 10,
            optimum: 100.0,
        };
        let t = ResultsTable::new(vec!["a".into()], vec![p("f1")], vec![vec![vec![1e-15, 2.0]]]).unwrap();
        assert_eq!(t.runs(0, 0), &[0.0, 2.0]);
        assert!(ResultsTable::new(vec!["a".into()], vec![p("f1")], vec![vec![vec![]]]).is_err());
        assert!(ResultsTable::new(
            vec!["a".into(), "b".into()],
            vec![p("f1")],
            vec![vec![vec![1.0, 2.0]], vec![vec![1.0]]]
        )
        .is_err());
    }

    #[test]
    fn best_found_optimum() {
        let t = ResultsTable::from_values(
            vec!["a".into(), "b".into()],
            vec![("p".into(), 6, None)],
            vec![vec![vec![5.0, 7.0]], vec![vec![3.0, 4.0]]],
        )
        .unwrap();
        assert_eq!(t.problems()[0].optimum, 3.0);
        assert_eq!(t.runs(1, 0), &[0.0, 1.0]);
        assert_eq!(t.runs(0, 0), &[2.0, 4.0]);
    }

    #[test]
    fn split_groups() {
        let info = |n: &str, d| ProblemInfo {
            name: n.into(),
            dim: d,
            optimum: 1.0,
        };
        let t = ResultsTable::new(
            vec!["a".into()],
            vec![info("x", 10), info("y", 30), info("z", 10)],
            vec![vec![vec![1.0], vec![2.0], vec![3.0]]],
        )
        .unwrap();
        let g = t.split_by_dimension();
        assert_eq!(g.len(), 2);
        assert_eq!(g[&10].n_problems(), 2);
        assert_eq!(g[&30].runs(0, 0), &[2.0]);
        assert_eq!(t.summary(0, 0), (1.0, 1.0, 0.0));
    }
}
