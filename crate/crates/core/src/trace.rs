//! Run traces and the budget-enforcing evaluator every engine goes through.

use serde::{Deserialize, Serialize};

use crate::problems::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub evals: usize,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    /// The convergence indicator fell to the threshold, or refinement became
    /// mandatory.
    Trigger { indicator: f64, mandated: bool },
    Restart { size: usize },
    Refine { size: usize, inserted_best: bool },
    /// Exclusion intervals covered a whole coordinate range, so that
    /// coordinate was drawn uniformly instead.
    ExclusionFallback { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub evals: usize,
    pub progress: f64,
    #[serde(flatten)]
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub checkpoints: Vec<Checkpoint>,
    pub best_position: Vec<f64>,
    pub best_value: f64,
    pub evaluations: usize,
    pub max_evals: usize,
    /// `(evaluations so far, population size)` at each generation start.
    pub population_sizes: Vec<(usize, usize)>,
    pub events: Vec<Event>,
}

impl RunTrace {
    pub fn final_error(&self, optimum: f64) -> f64 {
        (self.best_value - optimum).max(0.0)
    }

    pub fn restarts(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::Restart { .. }))
            .count()
    }

    pub fn refinements(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::Refine { .. }))
            .count()
    }
}

/// Counts objective calls against a hard budget and tracks the best point.
///
/// A checkpoint is recorded every `checkpoint_every` evaluations and once
/// more when the trace is finished.
pub struct BudgetedEvaluator<'a> {
    problem: &'a Problem,
    max_evals: usize,
    count: usize,
    every: usize,
    best_value: f64,
    best_position: Vec<f64>,
    checkpoints: Vec<Checkpoint>,
}

impl<'a> BudgetedEvaluator<'a> {
    pub fn new(problem: &'a Problem, max_evals: usize, checkpoint_every: usize) -> Self {
        Self {
            problem,
            max_evals,
            count: 0,
            every: checkpoint_every.max(1),
            best_value: f64::INFINITY,
            best_position: Vec::new(),
            checkpoints: Vec::new(),
        }
    }

    pub fn problem(&self) -> &Problem {
        self.problem
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn max_evals(&self) -> usize {
        self.max_evals
    }

    pub fn remaining(&self) -> usize {
        self.max_evals - self.count
    }

    pub fn exhausted(&self) -> bool {
        self.count >= self.max_evals
    }

    /// Fraction of the budget used so far.
    pub fn progress(&self) -> f64 {
        self.count as f64 / self.max_evals as f64
    }

    pub fn best_value(&self) -> f64 {
        self.best_value
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    /// Evaluates `x`. Panics if the budget is already spent; engines check
    /// [`Self::exhausted`] first.
    pub fn evaluate(&mut self, x: &[f64]) -> f64 {
        assert!(self.count < self.max_evals, "evaluation budget exceeded");
        let mut f = self.problem.evaluate(x);
        if f.is_nan() {
            f = f64::INFINITY;
        }
        self.count += 1;
        if f < self.best_value {
            self.best_value = f;
            self.best_position.clear();
            self.best_position.extend_from_slice(x);
        }
        if self.count % self.every == 0 {
            self.checkpoints.push(Checkpoint {
                evals: self.count,
                best: self.best_value,
            });
        }
        f
    }

    pub fn finish(mut self, population_sizes: Vec<(usize, usize)>, events: Vec<Event>) -> RunTrace {
        if self.checkpoints.last().map(|c| c.evals) != Some(self.count) {
            self.checkpoints.push(Checkpoint {
                evals: self.count,
                best: self.best_value,
            });
        }
        RunTrace {
            checkpoints: self.checkpoints,
            best_position: self.best_position,
            best_value: self.best_value,
            evaluations: self.count,
            max_evals: self.max_evals,
            population_sizes,
            events,
        }
    }
}
