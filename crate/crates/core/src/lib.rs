//! Differential evolution with adaptive restart and refinement.
//!
//! The crate contains four optimizers sharing one set of operators:
//!
//! - [`de::run_de`]: classic DE/rand/1/bin,
//! - [`shade::run_lshade`]: success-history adaptation with linear population
//!   size reduction,
//! - [`shade::run_jso`]: LSHADE plus weighted mutation, progress-dependent
//!   clamps and a locked memory slot,
//! - [`engine::run_arrde`]: the jSO machinery with a budget-aware initial
//!   population, nonlinear size reduction and a restart/refine cycle that
//!   steers restarts away from already converged regions.
//!
//! [`problems`] builds CEC-style shifted/rotated, hybrid and composition
//! problems, and [`stats`] holds the rank-based, accuracy-based and legacy
//! scoring used to compare optimizers across suites.

pub mod de;
pub mod engine;
mod error;
pub mod problems;
pub mod rng;
pub mod shade;
pub mod stats;
pub mod trace;

pub use error::{Error, Result};
pub use problems::Problem;
pub use rng::{seed_rng, RngState};
pub use trace::{Event, EventKind, RunTrace};

/// An optimizer the benchmark harness can drive.
pub trait Optimizer: Send + Sync {
    fn name(&self) -> &str;

    /// Smallest evaluation budget the optimizer accepts for `problem`.
    fn min_budget(&self, problem: &Problem, max_evals: usize) -> usize;

    fn run(
        &self,
        problem: &Problem,
        max_evals: usize,
        checkpoint_every: usize,
        rng: &mut RngState,
    ) -> Result<RunTrace>;
}
