//! Seeded random streams and the sampling primitives used by every engine.
//!
//! All randomness flows through [`RngState`], a ChaCha8 stream keyed by a
//! 64-bit seed. ChaCha8 output is specified bit-for-bit, so a seed yields the
//! same sequence on every platform. There is no global generator: each run
//! owns its own state.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Cauchy, Distribution, Normal};

use crate::error::{arg, Result};

/// A single-owner deterministic random stream.
#[derive(Debug, Clone)]
pub struct RngState {
    seed: u64,
    inner: ChaCha8Rng,
}

/// Creates a stream whose output is a pure function of `seed`.
pub fn seed_rng(seed: u64) -> RngState {
    RngState::new(seed)
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform draw on `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`. Panics when `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Uniform index in `0..n` that avoids every entry of `exclude`.
    ///
    /// Returns `None` when no admissible index exists.
    pub fn index_excluding(&mut self, n: usize, exclude: &[usize]) -> Option<usize> {
        let excluded = (0..n).filter(|i| exclude.contains(i)).count();
        let admissible = n - excluded;
        if admissible == 0 {
            return None;
        }
        let mut k = self.index(admissible);
        for i in 0..n {
            if exclude.contains(&i) {
                continue;
            }
            if k == 0 {
                return Some(i);
            }
            k -= 1;
        }
        unreachable!("admissible count covers the loop")
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.inner);
    }

    /// One draw from `N(mean, sigma^2)`.
    pub fn normal(&mut self, mean: f64, sigma: f64) -> Result<f64> {
        sample_normal(self, mean, sigma)
    }

    /// One draw from `Cauchy(location, scale)`.
    pub fn cauchy(&mut self, location: f64, scale: f64) -> Result<f64> {
        sample_cauchy(self, location, scale)
    }

    pub(crate) fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.inner
    }
}

pub fn sample_normal(rng: &mut RngState, mean: f64, sigma: f64) -> Result<f64> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return arg(format!("normal sigma must be finite and >= 0, got {sigma}"));
    }
    if sigma == 0.0 {
        return Ok(mean);
    }
    let dist = Normal::new(mean, sigma).map_err(|e| crate::Error::Argument(e.to_string()))?;
    Ok(dist.sample(rng.inner()))
}

pub fn sample_cauchy(rng: &mut RngState, location: f64, scale: f64) -> Result<f64> {
    if !(scale > 0.0) || !scale.is_finite() {
        return arg(format!("cauchy scale must be finite and > 0, got {scale}"));
    }
    let dist = Cauchy::new(location, scale).map_err(|e| crate::Error::Argument(e.to_string()))?;
    Ok(dist.sample(rng.inner()))
}

/// Latin hypercube design of `n` points in the box `[lower, upper]`.
///
/// Every coordinate axis is cut into `n` equal strata and each stratum holds
/// exactly one point. Rows are points.
pub fn latin_hypercube(
    rng: &mut RngState,
    n: usize,
    lower: &[f64],
    upper: &[f64],
) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return arg("latin hypercube needs at least one point");
    }
    check_box(lower, upper)?;
    let d = lower.len();
    let mut points = vec![vec![0.0; d]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    for j in 0..d {
        rng.shuffle(&mut strata);
        let width = (upper[j] - lower[j]) / n as f64;
        for (point, &s) in points.iter_mut().zip(&strata) {
            let x = lower[j] + (s as f64 + rng.uniform()) * width;
            // rounding may push the top stratum onto the bound
            point[j] = x.min(upper[j]).max(lower[j]);
        }
    }
    Ok(points)
}

pub(crate) fn check_box(lower: &[f64], upper: &[f64]) -> Result<()> {
    if lower.len() != upper.len() {
        return arg(format!(
            "bound vectors differ in length ({} vs {})",
            lower.len(),
            upper.len()
        ));
    }
    if lower.is_empty() {
        return arg("bounds must have at least one dimension");
    }
    for (j, (l, u)) in lower.iter().zip(upper).enumerate() {
        if !(l < u) || !l.is_finite() || !u.is_finite() {
            return arg(format!("degenerate bounds in dimension {j}: [{l}, {u}]"));
        }
    }
    Ok(())
}
