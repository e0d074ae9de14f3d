//! Friedman ranks and the Mann–Whitney U test.

use super::ResultsTable;

/// Ascending ranks starting at 1, ties sharing the average of their ranks.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end]] == values[idx[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

#[derive(Debug, Clone, PartialEq)]
pub struct FriedmanRanks {
    /// `R[k][j]`: mean over runs of the rank of algorithm `k` on problem `j`.
    pub per_problem: Vec<Vec<f64>>,
    /// `R[k]`: mean of `per_problem[k]` over problems.
    pub overall: Vec<f64>,
}

/// Ranks the algorithms within every (problem, run) slice.
pub fn friedman_ranks(table: &ResultsTable) -> FriedmanRanks {
    let na = table.n_algorithms();
    let np = table.n_problems();
    let nr = table.n_runs();
    let mut per_problem = vec![vec![0.0; np]; na];
    let mut slice = vec![0.0; na];
    for j in 0..np {
        for i in 0..nr {
            for (k, s) in slice.iter_mut().enumerate() {
                *s = table.runs(k, j)[i];
            }
            for (k, r) in average_ranks(&slice).into_iter().enumerate() {
                per_problem[k][j] += r / nr as f64;
            }
        }
    }
    let overall = per_problem.iter().map(|r| r.iter().sum::<f64>() / np as f64).collect();
    FriedmanRanks { per_problem, overall }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Win,
    Tie,
    Loss,
}

impl Outcome {
    pub fn mirror(self) -> Self {
        match self {
            Outcome::Win => Outcome::Loss,
            Outcome::Tie => Outcome::Tie,
            Outcome::Loss => Outcome::Win,
        }
    }
}

/// Tie-averaged ranks of `a` within the pooled sample, doubled so that
/// they are integers.
fn doubled_pooled_ranks(a: &[f64], b: &[f64]) -> (Vec<u64>, u64) {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks: Vec<u64> = average_ranks(&pooled).into_iter().map(|r| (2.0 * r).round() as u64).collect();
    let sum_a = ranks[..a.len()].iter().sum();
    (ranks, sum_a)
}

/// Exact two-sided p-value: the share of all `C(n+m, n)` assignments of the
/// pooled midranks to `a` whose rank sum lies at least as far from its mean
/// as the observed one.
pub fn mann_whitney_p_exact(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let total = n + b.len();
    let (ranks, sum_a) = doubled_pooled_ranks(a, b);
    let max_sum: u64 = ranks.iter().sum();
    let width = max_sum as usize + 1;
    // counts[j][s]: subsets of size j with doubled rank sum s
    let mut counts = vec![vec![0.0f64; width]; n + 1];
    counts[0][0] = 1.0;
    for (seen, &r) in ranks.iter().enumerate() {
        let r = r as usize;
        for j in (1..=n.min(seen + 1)).rev() {
            let (lo, hi) = counts.split_at_mut(j);
            let prev = &lo[j - 1];
            let cur = &mut hi[0];
            for s in (r..width).rev() {
                if prev[s - r] != 0.0 {
                    cur[s] += prev[s - r];
                }
            }
        }
    }
    let mean2 = (n * (total + 1)) as i64;
    let obs = (sum_a as i64 - mean2).abs();
    let all: f64 = counts[n].iter().sum();
    let extreme: f64 = counts[n]
        .iter()
        .enumerate()
        .filter(|(s, _)| (*s as i64 - mean2).abs() >= obs)
        .map(|(_, c)| c)
        .sum();
    (extreme / all).min(1.0)
}

/// Two-sided p-value from the normal approximation with tie and
/// continuity correction.
pub fn mann_whitney_p_normal(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let m = b.len() as f64;
    let big_n = n + m;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = average_ranks(&pooled);
    let r_a: f64 = ranks[..a.len()].iter().sum();
    let u = r_a - n * (n + 1.0) / 2.0;
    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = n * m / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((u - n * m / 2.0).abs() - 0.5).max(0.0) / var.sqrt();
    libm::erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

/// Sample size from which the normal approximation replaces enumeration.
pub const EXACT_LIMIT: usize = 20;

/// Two-sided p-value, exact when both samples are below [`EXACT_LIMIT`].
pub fn mann_whitney_p(a: &[f64], b: &[f64]) -> f64 {
    if a.len().max(b.len()) < EXACT_LIMIT {
        mann_whitney_p_exact(a, b)
    } else {
        mann_whitney_p_normal(a, b)
    }
}

/// Outcome of `a` against `b` on errors (smaller is better).
///
/// Significant differences go to the sample with the smaller mean pooled
/// rank, which for equal sizes is the smaller rank sum.
pub fn mann_whitney_wtl(a: &[f64], b: &[f64], alpha: f64) -> Outcome {
    if a.is_empty() || b.is_empty() || mann_whitney_p(a, b) >= alpha {
        return Outcome::Tie;
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = average_ranks(&pooled);
    let mean_a = ranks[..a.len()].iter().sum::<f64>() / a.len() as f64;
    let mean_b = ranks[a.len()..].iter().sum::<f64>() / b.len() as f64;
    if mean_a < mean_b {
        Outcome::Win
    } else if mean_a > mean_b {
        Outcome::Loss
    } else {
        Outcome::Tie
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wtl {
    pub opponent: String,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

/// Per-opponent W/T/L of algorithm `reference` over the problems.
pub fn wtl_table(table: &ResultsTable, reference: usize, alpha: f64) -> Vec<Wtl> {
    (0..table.n_algorithms())
        .map(|k| {
            let mut w = Wtl {
                opponent: table.algorithms()[k].clone(),
                wins: 0,
                ties: 0,
                losses: 0,
            };
            for j in 0..table.n_problems() {
                match mann_whitney_wtl(table.runs(reference, j), table.runs(k, j), alpha) {
                    Outcome::Win => w.wins += 1,
                    Outcome::Tie => w.ties += 1,
                    Outcome::Loss => w.losses += 1,
                }
            }
            w
        })
        .collect()
}
