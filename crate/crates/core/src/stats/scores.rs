//! Bounded relative-error accuracy and the combined score.

use std::collections::BTreeMap;
use std::str::FromStr;

use super::ResultsTable;
use crate::error::{Error, Result};

/// Optima closer to zero than this cannot serve as a relative-error scale.
const ZERO_OPTIMUM: f64 = 1e-12;

/// `eps / (1 + eps)`, mapping `[0, inf)` into `[0, 1)`.
pub fn bounded(eps: f64) -> f64 {
    if eps.is_infinite() {
        return 1.0f64.next_down();
    }
    let b = eps / (1.0 + eps);
    // keep the bound strict where 1 + eps rounds to eps
    b.min(1.0f64.next_down())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyScores {
    /// Mean relative error `eps[k][j]`.
    pub relative: Vec<Vec<f64>>,
    /// Bounded form `E[k][j]`.
    pub bounded: Vec<Vec<f64>>,
    /// `E[k]`, the mean of `bounded[k]` over problems.
    pub overall: Vec<f64>,
}

/// Relative errors use `|f(x*)|` as the scale. When an optimum is zero the
/// caller must supply `zero_guard`, a positive scale used instead.
pub fn accuracy_scores(table: &ResultsTable, zero_guard: Option<f64>) -> Result<AccuracyScores> {
    let mut scales = Vec::with_capacity(table.n_problems());
    for p in table.problems() {
        let s = p.optimum.abs();
        if s < ZERO_OPTIMUM {
            match zero_guard {
                Some(g) if g > 0.0 => scales.push(g),
                _ => {
                    return Err(Error::Data(format!(
                        "problem {} has a zero optimum, so its relative error is undefined; \
                         configure a positive bias or zero-optimum guard",
                        p.name
                    )))
                }
            }
        } else {
            scales.push(s);
        }
    }
    let mut relative = Vec::with_capacity(table.n_algorithms());
    let mut bounded_rows = Vec::with_capacity(table.n_algorithms());
    let mut overall = Vec::with_capacity(table.n_algorithms());
    for k in 0..table.n_algorithms() {
        let eps: Vec<f64> = (0..table.n_problems())
            .map(|j| {
                let runs = table.runs(k, j);
                runs.iter().map(|e| e / scales[j]).sum::<f64>() / runs.len() as f64
            })
            .collect();
        let b: Vec<f64> = eps.iter().map(|e| bounded(*e)).collect();
        overall.push(b.iter().sum::<f64>() / b.len() as f64);
        relative.push(eps);
        bounded_rows.push(b);
    }
    Ok(AccuracyScores {
        relative,
        bounded: bounded_rows,
        overall,
    })
}

/// `min / x`, defined as 1 when `x` is zero (then the minimum is zero too).
pub fn ratio_score(min: f64, x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        min / x
    }
}

pub(super) fn fifty_sum(e: &[f64], r: &[f64]) -> Vec<f64> {
    let min_e = e.iter().copied().fold(f64::INFINITY, f64::min);
    let min_r = r.iter().copied().fold(f64::INFINITY, f64::min);
    e.iter()
        .zip(r)
        .map(|(ek, rk)| 50.0 * (ratio_score(min_e, *ek) + ratio_score(min_r, *rk)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinedScores {
    pub s_e: Vec<f64>,
    pub s_r: Vec<f64>,
    pub s_tot: Vec<f64>,
    /// Per group `S^(D)`.
    pub per_dim: BTreeMap<usize, Vec<f64>>,
}

/// Weighted cross-group combination of accuracy and rank scores.
pub fn combined_scores(
    per_dim: &BTreeMap<usize, (Vec<f64>, Vec<f64>)>,
    weights: &BTreeMap<usize, f64>,
) -> Result<CombinedScores> {
    let na = match per_dim.values().next() {
        Some((e, _)) => e.len(),
        None => return Err(Error::Argument("combined scores need at least one group".into())),
    };
    let mut s_e = vec![0.0; na];
    let mut s_r = vec![0.0; na];
    let mut groups = BTreeMap::new();
    for (d, (e, r)) in per_dim {
        let w = *weights
            .get(d)
            .ok_or_else(|| Error::Argument(format!("no weight for dimension {d}")))?;
        if e.len() != na || r.len() != na {
            return Err(Error::Argument(format!("group {d} has a different algorithm count")));
        }
        for k in 0..na {
            s_e[k] += w * e[k];
            s_r[k] += w * r[k];
        }
        groups.insert(*d, fifty_sum(e, r));
    }
    let s_tot = fifty_sum(&s_e, &s_r);
    Ok(CombinedScores {
        s_e,
        s_r,
        s_tot,
        per_dim: groups,
    })
}

/// Cross-dimension weighting presets.
#[derive(Debug, Clone, PartialEq)]
pub enum SuiteWeights {
    /// 0.1, 0.2, 0.3, 0.4 for D = 10, 30, 50, 100.
    Cec2017,
    /// 0.1, 0.2, 0.3, 0.4 for D = 5, 10, 15, 20.
    Cec2020,
    /// 0.1, 0.2 for D = 10, 20.
    Cec2022,
    /// Weight 1 for every group.
    Cec2011,
    Uniform,
    /// Weights 0.1, 0.2, ... by ascending group key.
    Ascending,
    Custom(BTreeMap<usize, f64>),
}

impl SuiteWeights {
    pub fn weights(&self, groups: &[usize]) -> Result<BTreeMap<usize, f64>> {
        let table: &[(usize, f64)] = match self {
            SuiteWeights::Cec2017 => &[(10, 0.1), (30, 0.2), (50, 0.3), (100, 0.4)],
            SuiteWeights::Cec2020 => &[(5, 0.1), (10, 0.2), (15, 0.3), (20, 0.4)],
            SuiteWeights::Cec2022 => &[(10, 0.1), (20, 0.2)],
            SuiteWeights::Cec2011 | SuiteWeights::Uniform => {
                return Ok(groups.iter().map(|&d| (d, 1.0)).collect());
            }
            SuiteWeights::Ascending => {
                let mut g = groups.to_vec();
                g.sort_unstable();
                g.dedup();
                return Ok(g.into_iter().enumerate().map(|(i, d)| (d, 0.1 * (i + 1) as f64)).collect());
            }
            SuiteWeights::Custom(map) => {
                return groups
                    .iter()
                    .map(|d| {
                        map.get(d)
                            .map(|w| (*d, *w))
                            .ok_or_else(|| Error::Argument(format!("no weight for dimension {d}")))
                    })
                    .collect();
            }
        };
        groups
            .iter()
            .map(|d| {
                table
                    .iter()
                    .find(|(k, _)| k == d)
                    .map(|(_, w)| (*d, *w))
                    .ok_or_else(|| Error::Argument(format!("preset {self:?} has no weight for dimension {d}")))
            })
            .collect()
    }
}

impl FromStr for SuiteWeights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cec2017" => SuiteWeights::Cec2017,
            "cec2020" => SuiteWeights::Cec2020,
            "cec2022" => SuiteWeights::Cec2022,
            "cec2011" => SuiteWeights::Cec2011,
            "uniform" => SuiteWeights::Uniform,
            "ascending" => SuiteWeights::Ascending,
            other => return Err(Error::Argument(format!("unknown weight preset '{other}'"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::ProblemInfo;
    use proptest::prelude::*;

    fn one_group(e: Vec<f64>, r: Vec<f64>) -> BTreeMap<usize, (Vec<f64>, Vec<f64>)> {
        BTreeMap::from([(10, (e, r))])
    }

    #[test]
    fn bounded_cases() {
        assert_eq!(bounded(0.0), 0.0);
        assert_eq!(bounded(1.0), 0.5);
        let b = bounded(1e6);
        assert!(b > 0.999_998 && b < 1.0);
        assert!(bounded(1e12) < 1.0 && bounded(1e300) < 1.0 && bounded(f64::INFINITY) < 1.0);
    }

    #[test]
    fn accuracy_cases() {
        let p = |opt| ProblemInfo {
            name: "p".into(),
            dim: 10,
            optimum: opt,
        };
        let t = ResultsTable::new(
            vec!["a".into(), "b".into()],
            vec![p(100.0)],
            vec![vec![vec![0.0, 0.0]], vec![vec![50.0, 150.0]]],
        )
        .unwrap();
        let s = accuracy_scores(&t, None).unwrap();
        assert_eq!(s.relative[0][0], 0.0);
        assert_eq!(s.bounded[0][0], 0.0);
        assert_eq!(s.relative[1][0], 1.0);
        assert_eq!(s.overall[1], 0.5);

        let z = ResultsTable::new(vec!["a".into()], vec![p(0.0)], vec![vec![vec![1.0]]]).unwrap();
        match accuracy_scores(&z, None) {
            Err(Error::Data(msg)) => assert!(msg.contains('p')),
            other => panic!("{other:?}"),
        }
        assert_eq!(accuracy_scores(&z, Some(2.0)).unwrap().relative[0][0], 0.5);
    }

    #[test]
    fn combined_cases() {
        let w = BTreeMap::from([(10, 1.0)]);
        let c = combined_scores(&one_group(vec![1.0, 2.0], vec![1.0, 2.0]), &w).unwrap();
        assert_eq!(c.s_tot, vec![100.0, 50.0]);
        assert_eq!(c.per_dim[&10], c.s_tot);

        let groups = BTreeMap::from([
            (10, (vec![0.1, 0.3], vec![1.2, 1.8])),
            (30, (vec![0.2, 0.9], vec![1.0, 2.0])),
        ]);
        let w = SuiteWeights::Cec2017.weights(&[10, 30]).unwrap();
        let c = combined_scores(&groups, &w).unwrap();
        assert!((c.s_e[0] - (0.1 * 0.1 + 0.2 * 0.2)).abs() < 1e-15);
        assert_eq!(c.s_tot[0], 100.0);
        assert!(combined_scores(&groups, &BTreeMap::from([(10, 1.0)])).is_err());
        // both best at zero accuracy
        let c = combined_scores(&one_group(vec![0.0, 0.0], vec![1.0, 2.0]), &BTreeMap::from([(10, 1.0)])).unwrap();
        assert_eq!(c.s_tot, vec![100.0, 75.0]);
    }

    #[test]
    fn presets() {
        let w = SuiteWeights::Cec2020.weights(&[5, 20]).unwrap();
        assert_eq!(w[&5], 0.1);
        assert_eq!(w[&20], 0.4);
        assert!(SuiteWeights::Cec2022.weights(&[30]).is_err());
        assert_eq!(SuiteWeights::Cec2011.weights(&[6, 212]).unwrap()[&212], 1.0);
        assert_eq!("CEC2022".parse::<SuiteWeights>().unwrap(), SuiteWeights::Cec2022);
        assert!("nope".parse::<SuiteWeights>().is_err());
    }

    proptest! {
        #[test]
        fn bounded_monotone(a in 0.0f64..1e15, b in 0.0f64..1e15) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(bounded(lo) <= bounded(hi));
            prop_assert!((0.0..1.0).contains(&bounded(hi)));
        }

        #[test]
        fn relabel_invariant(e in proptest::collection::vec(0.01f64..1.0, 2..6), r in proptest::collection::vec(1.0f64..5.0, 6)) {
            let n = e.len();
            let r = r[..n].to_vec();
            let w = BTreeMap::from([(10, 1.0)]);
            let c = combined_scores(&one_group(e.clone(), r.clone()), &w).unwrap();
            let mut re = e.clone();
            let mut rr = r.clone();
            re.reverse();
            rr.reverse();
            let mut c2 = combined_scores(&one_group(re, rr), &w).unwrap().s_tot;
            c2.reverse();
            prop_assert_eq!(c.s_tot, c2);
        }
    }
}
