//! Base landscapes. Each one is written so that its global minimum value is
//! 0 at `z = 0`; functions whose textbook optimum sits elsewhere (Rosenbrock,
//! modified Schwefel, HappyCat, HGBat) carry the usual internal offset.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseFunction {
    Sphere,
    BentCigar,
    Zakharov,
    Rosenbrock,
    Rastrigin,
    Schwefel12,
    ModifiedSchwefel,
    Levy,
    SchafferF7,
    Ackley,
    Griewank,
    HappyCat,
    Hgbat,
}

const SCHWEFEL_OFFSET: f64 = 420.968_746_227_503_6;

impl BaseFunction {
    pub const ALL: [BaseFunction; 13] = [
        BaseFunction::Sphere,
        BaseFunction::BentCigar,
        BaseFunction::Zakharov,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Schwefel12,
        BaseFunction::ModifiedSchwefel,
        BaseFunction::Levy,
        BaseFunction::SchafferF7,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::HappyCat,
        BaseFunction::Hgbat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::BentCigar => "bent_cigar",
            BaseFunction::Zakharov => "zakharov",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Schwefel12 => "schwefel_1_2",
            BaseFunction::ModifiedSchwefel => "modified_schwefel",
            BaseFunction::Levy => "levy",
            BaseFunction::SchafferF7 => "schaffer_f7",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::HappyCat => "happy_cat",
            BaseFunction::Hgbat => "hgbat",
        }
    }

    /// Scale factor mapping a `[-100, 100]` search box onto the function's
    /// natural domain.
    pub fn natural_shrink(self) -> f64 {
        match self {
            BaseFunction::Rosenbrock => 2.048 / 100.0,
            BaseFunction::Rastrigin => 5.12 / 100.0,
            BaseFunction::ModifiedSchwefel => 1000.0 / 100.0,
            BaseFunction::Griewank => 600.0 / 100.0,
            BaseFunction::HappyCat | BaseFunction::Hgbat => 5.0 / 100.0,
            _ => 1.0,
        }
    }

    pub fn eval(self, z: &[f64]) -> f64 {
        let d = z.len() as f64;
        match self {
            BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
            BaseFunction::BentCigar => match z.split_first() {
                Some((first, rest)) => first * first + 1e6 * rest.iter().map(|v| v * v).sum::<f64>(),
                None => 0.0,
            },
            BaseFunction::Zakharov => {
                let sq: f64 = z.iter().map(|v| v * v).sum();
                let lin: f64 = z.iter().enumerate().map(|(i, v)| 0.5 * (i + 1) as f64 * v).sum();
                sq + lin.powi(2) + lin.powi(4)
            }
            BaseFunction::Rosenbrock => z
                .windows(2)
                .map(|w| {
                    let (a, b) = (w[0] + 1.0, w[1] + 1.0);
                    100.0 * (a * a - b).powi(2) + (a - 1.0).powi(2)
                })
                .sum(),
            BaseFunction::Rastrigin => z
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            BaseFunction::Schwefel12 => {
                let mut partial = 0.0;
                let mut total = 0.0;
                for v in z {
                    partial += v;
                    total += partial * partial;
                }
                total
            }
            BaseFunction::ModifiedSchwefel => {
                let peak = SCHWEFEL_OFFSET * SCHWEFEL_OFFSET.sqrt().sin();
                let sum: f64 = z
                    .iter()
                    .map(|v| schwefel_term(v + SCHWEFEL_OFFSET, d))
                    .sum();
                (peak * d - sum).max(0.0)
            }
            BaseFunction::Levy => {
                let w: Vec<f64> = z.iter().map(|v| 1.0 + v / 4.0).collect();
                let n = w.len();
                if n == 0 {
                    return 0.0;
                }
                let head = (PI * w[0]).sin().powi(2);
                let mid: f64 = w[..n - 1]
                    .iter()
                    .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
                    .sum();
                let last = w[n - 1];
                let tail = (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2));
                head + mid + tail
            }
            BaseFunction::SchafferF7 => {
                let s: Vec<f64> = if z.len() == 1 {
                    vec![z[0].abs()]
                } else {
                    z.windows(2).map(|w| (w[0] * w[0] + w[1] * w[1]).sqrt()).collect()
                };
                if s.is_empty() {
                    return 0.0;
                }
                let mean = s
                    .iter()
                    .map(|si| {
                        let r = si.sqrt();
                        r + r * (50.0 * si.powf(0.2)).sin().powi(2)
                    })
                    .sum::<f64>()
                    / s.len() as f64;
                mean * mean
            }
            BaseFunction::Ackley => {
                if z.is_empty() {
                    return 0.0;
                }
                let sq = z.iter().map(|v| v * v).sum::<f64>() / d;
                let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                (-20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E).max(0.0)
            }
            BaseFunction::Griewank => {
                let sum = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                sum - prod + 1.0
            }
            BaseFunction::HappyCat => {
                if z.is_empty() {
                    return 0.0;
                }
                let sq: f64 = z.iter().map(|v| (v - 1.0).powi(2)).sum();
                let lin: f64 = z.iter().map(|v| v - 1.0).sum();
                (sq - d).abs().powf(0.25) + (0.5 * sq + lin) / d + 0.5
            }
            BaseFunction::Hgbat => {
                if z.is_empty() {
                    return 0.0;
                }
                let sq: f64 = z.iter().map(|v| (v - 1.0).powi(2)).sum();
                let lin: f64 = z.iter().map(|v| v - 1.0).sum();
                (sq * sq - lin * lin).abs().sqrt() + (0.5 * sq + lin) / d + 0.5
            }
        }
    }
}

fn schwefel_term(y: f64, d: f64) -> f64 {
    if y > 500.0 {
        let m = 500.0 - y.rem_euclid(500.0);
        m * m.abs().sqrt().sin() - (y - 500.0).powi(2) / (10_000.0 * d)
    } else if y < -500.0 {
        let m = y.abs().rem_euclid(500.0) - 500.0;
        m * m.abs().sqrt().sin() - (y + 500.0).powi(2) / (10_000.0 * d)
    } else {
        y * y.abs().sqrt().sin()
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseFunction::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown base function '{s}'")))
    }
}

/// Evaluates the named base function at `z`.
pub fn base_function(kind: &str, z: &[f64]) -> Result<f64> {
    Ok(kind.parse::<BaseFunction>()?.eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_base_function_is_zero_at_origin() {
        for k in BaseFunction::ALL {
            for d in [1usize, 2, 10, 30] {
                let v = k.eval(&vec![0.0; d]);
                assert!(v.abs() < 1e-9, "{k} at D={d} gave {v}");
            }
        }
    }

    #[test]
    fn base_functions_nonnegative_near_origin() {
        let mut rng = crate::rng::seed_rng(1);
        for k in BaseFunction::ALL {
            for _ in 0..200 {
                let z: Vec<f64> = (0..10).map(|_| rng.uniform_in(-3.0, 3.0)).collect();
                assert!(k.eval(&z) >= -1e-9, "{k} negative at {z:?}");
            }
        }
    }

    #[test]
    fn hand_values() {
        assert_eq!(base_function("sphere", &[0.0; 4]).unwrap(), 0.0);
        let mut e1 = vec![0.0; 10];
        e1[0] = 1.0;
        assert!((base_function("rastrigin", &e1).unwrap() - 1.0).abs() < 1e-12);
        assert!((base_function("rastrigin", &[0.0; 10]).unwrap()).abs() < 1e-12);
        assert_eq!(base_function("bent_cigar", &[1.0, 1.0]).unwrap(), 1.0 + 1e6);
        // (1, 2): sum sq 5, linear 0.5 + 2 = 2.5
        let zk = 5.0 + 2.5f64.powi(2) + 2.5f64.powi(4);
        assert!((base_function("zakharov", &[1.0, 2.0]).unwrap() - zk).abs() < 1e-12);
        // partial sums 1, 3, 6
        assert_eq!(base_function("schwefel_1_2", &[1.0, 2.0, 3.0]).unwrap(), 46.0);
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(matches!(base_function("nope", &[0.0]), Err(Error::Argument(_))));
        for k in BaseFunction::ALL {
            assert_eq!(k.name().parse::<BaseFunction>().unwrap(), k);
        }
    }
}
