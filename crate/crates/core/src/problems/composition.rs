use crate::error::{arg, Result};
use crate::problems::{Objective, Problem};

#[derive(Debug, Clone)]
pub struct CompositionComponent {
    /// Component landscape; its optimum position is the component centre.
    pub problem: Problem,
    pub sigma: f64,
    pub lambda: f64,
    pub bias: f64,
}

/// Distance-weighted mixture of component problems.
///
/// Raw weights are `w_i = exp(-|x - o_i|^2 / (2 D sigma_i^2)) / |x - o_i|`
/// and are normalised to sum to one. A point sitting exactly on a centre
/// gives that component all the weight.
#[derive(Debug, Clone)]
pub struct CompositionSpec {
    components: Vec<CompositionComponent>,
    centres: Vec<Vec<f64>>,
    pub global_bias: f64,
}

impl CompositionSpec {
    pub fn new(components: Vec<CompositionComponent>, global_bias: f64) -> Result<Self> {
        let Some(first) = components.first() else {
            return arg("composition needs at least one component");
        };
        let d = first.problem.dim();
        let mut centres = Vec::with_capacity(components.len());
        for c in &components {
            if c.problem.dim() != d {
                return arg(format!(
                    "component '{}' has D={}, expected {d}",
                    c.problem.name(),
                    c.problem.dim()
                ));
            }
            if !(c.sigma > 0.0) || !(c.lambda > 0.0) {
                return arg(format!("component '{}' needs sigma, lambda > 0", c.problem.name()));
            }
            let Some(o) = c.problem.optimum_position() else {
                return arg(format!("component '{}' has no known optimum position", c.problem.name()));
            };
            centres.push(o.to_vec());
        }
        Ok(Self { components, centres, global_bias })
    }

    pub fn components(&self) -> &[CompositionComponent] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.centres[0].len()
    }

    fn weights_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let d = x.len() as f64;
        let mut w = Vec::with_capacity(self.components.len());
        for (c, o) in self.components.iter().zip(&self.centres) {
            let dist2: f64 = x.iter().zip(o).map(|(a, b)| (a - b).powi(2)).sum();
            if dist2 == 0.0 {
                let mut hot = vec![0.0; self.components.len()];
                hot[w.len()] = 1.0;
                return hot;
            }
            w.push((-dist2 / (2.0 * d * c.sigma * c.sigma)).exp() / dist2.sqrt());
        }
        let total: f64 = w.iter().sum();
        if total > 0.0 && total.is_finite() {
            w.iter_mut().for_each(|v| *v /= total);
        } else {
            // every raw weight underflowed: fall back to an even mix
            let n = w.len() as f64;
            w.iter_mut().for_each(|v| *v = 1.0 / n);
        }
        w
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let w = self.weights_unchecked(x);
        let mixed: f64 = w
            .iter()
            .zip(&self.components)
            .filter(|(wi, _)| **wi > 0.0)
            .map(|(wi, c)| wi * (c.lambda * c.problem.evaluate(x) + c.bias))
            .sum();
        mixed + self.global_bias
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return arg(format!(
                "point has {} coordinates, composition expects {}",
                x.len(),
                self.dim()
            ));
        }
        Ok(())
    }
}

pub fn composition_weights(spec: &CompositionSpec, x: &[f64]) -> Result<Vec<f64>> {
    spec.check(x)?;
    Ok(spec.weights_unchecked(x))
}

pub fn composition_eval(spec: &CompositionSpec, x: &[f64]) -> Result<f64> {
    spec.check(x)?;
    Ok(spec.eval_unchecked(x))
}

impl Objective for CompositionSpec {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.eval_unchecked(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{BaseFunction, Category, TransformSpec};
    use crate::rng::seed_rng;

    fn component(base: BaseFunction, shift: Vec<f64>, sigma: f64, lambda: f64, bias: f64) -> CompositionComponent {
        let mut spec = TransformSpec::identity(shift.len());
        spec.shift = shift;
        CompositionComponent {
            problem: Problem::transformed("c", Category::Basic, base, spec, 100.0).unwrap(),
            sigma,
            lambda,
            bias,
        }
    }

    #[test]
    fn single_component_is_scaled_plus_biases() {
        let c = component(BaseFunction::Sphere, vec![1.0, 2.0], 10.0, 3.0, 7.0);
        let g = c.problem.clone();
        let spec = CompositionSpec::new(vec![c], 500.0).unwrap();
        for x in [[0.0, 0.0], [5.0, -3.0], [1.0, 2.0]] {
            let want = 3.0 * g.evaluate(&x) + 7.0 + 500.0;
            assert!((composition_eval(&spec, &x).unwrap() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn global_optimum_at_zero_bias_centre() {
        let spec = CompositionSpec::new(
            vec![
                component(BaseFunction::Rastrigin, vec![1.0, 1.0, 1.0], 10.0, 1.0, 0.0),
                component(BaseFunction::Sphere, vec![-20.0, 5.0, 0.0], 20.0, 1e-6, 100.0),
                component(BaseFunction::Griewank, vec![30.0, -30.0, 10.0], 30.0, 1.0, 200.0),
            ],
            1000.0,
        )
        .unwrap();
        assert_eq!(composition_eval(&spec, &[1.0, 1.0, 1.0]).unwrap(), 1000.0);
    }

    #[test]
    fn equidistant_point_splits_evenly() {
        let spec = CompositionSpec::new(
            vec![
                component(BaseFunction::Sphere, vec![-1.0, 0.0], 5.0, 1.0, 0.0),
                component(BaseFunction::Sphere, vec![1.0, 0.0], 5.0, 1.0, 100.0),
            ],
            0.0,
        )
        .unwrap();
        let w = composition_weights(&spec, &[0.0, 3.0]).unwrap();
        assert!((w[0] - 0.5).abs() < 1e-15 && (w[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_empty_and_mismatched() {
        assert!(CompositionSpec::new(vec![], 0.0).is_err());
        let a = component(BaseFunction::Sphere, vec![0.0, 0.0], 1.0, 1.0, 0.0);
        let b = component(BaseFunction::Sphere, vec![0.0; 3], 1.0, 1.0, 0.0);
        assert!(CompositionSpec::new(vec![a, b], 0.0).is_err());
    }

    #[test]
    fn weights_form_probability_vector() {
        let mut rng = seed_rng(12);
        let spec = CompositionSpec::new(
            vec![
                component(BaseFunction::Sphere, vec![10.0, 0.0, -5.0, 0.0], 10.0, 1.0, 0.0),
                component(BaseFunction::Sphere, vec![-40.0, 20.0, 0.0, 3.0], 20.0, 1.0, 100.0),
                component(BaseFunction::Sphere, vec![0.0, -60.0, 50.0, 1.0], 30.0, 1.0, 200.0),
            ],
            0.0,
        )
        .unwrap();
        for _ in 0..2000 {
            let x: Vec<f64> = (0..4).map(|_| rng.uniform_in(-100.0, 100.0)).collect();
            let w = composition_weights(&spec, &x).unwrap();
            assert!(w.iter().all(|v| *v >= 0.0));
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        // far away every raw weight underflows
        let w = composition_weights(&spec, &[1e6; 4]).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
