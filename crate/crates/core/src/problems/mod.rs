//! Bound-constrained benchmark problems.
//!
//! A [`Problem`] couples box bounds and a known optimum value with an
//! [`Objective`]. The objectives shipped here follow the CEC construction:
//! shifted/rotated base functions, hybrids over a coordinate partition, and
//! distance-weighted compositions.

mod composition;
mod functions;
mod hybrid;
mod suite;
mod transform;

use std::fmt;
use std::sync::Arc;

pub use composition::{composition_eval, composition_weights, CompositionComponent, CompositionSpec};
pub use functions::{base_function, BaseFunction};
pub use hybrid::{hybrid_eval, HybridSpec};
pub use suite::{desk_suite_names, make_suite, SuiteConfig, SuiteKind};
pub use transform::{
    apply_transform, format_transform_data, load_transform_data, parse_transform_data,
    random_orthogonal, write_transform_data, Matrix, TransformSpec,
};

use crate::error::{Error, Result};

/// Something that can be minimised.
pub trait Objective: Send + Sync {
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Send + Sync,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Unimodal,
    Basic,
    Hybrid,
    Composition,
    Custom,
}

/// A shifted, shrunk and rotated base function plus bias.
#[derive(Debug, Clone)]
pub struct Transformed {
    pub base: BaseFunction,
    pub spec: TransformSpec,
}

impl Objective for Transformed {
    fn evaluate(&self, x: &[f64]) -> f64 {
        let d = x.len();
        let mut scratch = vec![0.0; 2 * d];
        let (a, b) = scratch.split_at_mut(d);
        self.spec.apply_into(x, a, b);
        self.base.eval(b) + self.spec.bias
    }
}

#[derive(Clone)]
pub struct Problem {
    name: String,
    category: Category,
    lower: Vec<f64>,
    upper: Vec<f64>,
    optimum_value: f64,
    optimum_position: Option<Vec<f64>>,
    objective: Arc<dyn Objective>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("category", &self.category)
            .field("optimum_value", &self.optimum_value)
            .finish_non_exhaustive()
    }
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        optimum_value: f64,
        objective: Arc<dyn Objective>,
    ) -> Result<Self> {
        crate::rng::check_box(&lower, &upper)?;
        Ok(Self {
            name: name.into(),
            category: Category::Custom,
            lower,
            upper,
            optimum_value,
            optimum_position: None,
            objective,
        })
    }

    /// A transformed base function over the symmetric box `[-bound, bound]^D`.
    pub fn transformed(
        name: impl Into<String>,
        category: Category,
        base: BaseFunction,
        spec: TransformSpec,
        bound: f64,
    ) -> Result<Self> {
        let d = spec.dim();
        spec.validate(1e-6)?;
        let shift = spec.shift.clone();
        let bias = spec.bias;
        Ok(Self::new(name, vec![-bound; d], vec![bound; d], bias, Arc::new(Transformed { base, spec }))?
            .with_category(category)
            .with_optimum_position(shift))
    }

    pub fn with_category(mut self, category: Category) -> Self {
        self.category = category;
        self
    }

    pub fn with_optimum_position(mut self, x: Vec<f64>) -> Self {
        self.optimum_position = Some(x);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn optimum_position(&self) -> Option<&[f64]> {
        self.optimum_position.as_deref()
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        self.objective.evaluate(x)
    }

    pub fn try_evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::Argument(format!(
                "{}: point has {} coordinates, expected {}",
                self.name,
                x.len(),
                self.dim()
            )));
        }
        Ok(self.objective.evaluate(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;

    #[test]
    fn sphere_is_rotation_invariant() {
        let mut rng = seed_rng(8);
        let spec = TransformSpec {
            shift: vec![0.0; 12],
            rotation: random_orthogonal(&mut rng, 12),
            bias: 0.0,
            shrink: 1.0,
        };
        let rotated = Transformed { base: BaseFunction::Sphere, spec };
        for _ in 0..50 {
            let x: Vec<f64> = (0..12).map(|_| rng.uniform_in(-50.0, 50.0)).collect();
            let plain = BaseFunction::Sphere.eval(&x);
            assert!((rotated.evaluate(&x) - plain).abs() <= 1e-10 * plain.max(1.0));
        }
    }

    #[test]
    fn closure_objective() {
        let p = Problem::new(
            "abs",
            vec![-1.0],
            vec![1.0],
            0.0,
            Arc::new(|x: &[f64]| x[0].abs()),
        )
        .unwrap();
        assert_eq!(p.evaluate(&[-0.5]), 0.5);
        assert!(p.try_evaluate(&[0.0, 1.0]).is_err());
        assert!(Problem::new("bad", vec![1.0], vec![1.0], 0.0, Arc::new(|_: &[f64]| 0.0)).is_err());
    }
}
