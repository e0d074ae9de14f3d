use crate::error::{arg, Result};
use crate::problems::{BaseFunction, Objective, TransformSpec};

/// Base functions evaluated on disjoint coordinate blocks of a shared
/// transformed point, then summed with weights.
#[derive(Debug, Clone)]
pub struct HybridSpec {
    transform: TransformSpec,
    partition: Vec<Vec<usize>>,
    components: Vec<(BaseFunction, f64)>,
}

impl HybridSpec {
    pub fn new(
        transform: TransformSpec,
        partition: Vec<Vec<usize>>,
        components: Vec<(BaseFunction, f64)>,
    ) -> Result<Self> {
        let d = transform.dim();
        if partition.len() != components.len() {
            return arg(format!(
                "{} partition blocks for {} components",
                partition.len(),
                components.len()
            ));
        }
        let mut seen = vec![false; d];
        for block in &partition {
            if block.is_empty() {
                return arg("hybrid partition has an empty block");
            }
            for &i in block {
                if i >= d {
                    return arg(format!("partition index {i} out of range for D={d}"));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return arg(format!("partition blocks overlap at index {i}"));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return arg(format!("partition does not cover index {i}"));
        }
        Ok(Self { transform, partition, components })
    }

    /// Splits `0..D` into consecutive blocks of the given proportions after
    /// applying `permutation`, the way CEC hybrids assign subcomponents.
    pub fn proportional_partition(permutation: &[usize], proportions: &[f64]) -> Vec<Vec<usize>> {
        let d = permutation.len();
        let mut blocks = Vec::with_capacity(proportions.len());
        let mut start = 0;
        for (k, p) in proportions.iter().enumerate() {
            let end = if k + 1 == proportions.len() {
                d
            } else {
                (start + (p * d as f64).ceil() as usize).min(d - (proportions.len() - k - 1))
            };
            let end = end.max(start + 1).min(d);
            blocks.push(permutation[start..end].to_vec());
            start = end;
        }
        blocks
    }

    pub fn transform(&self) -> &TransformSpec {
        &self.transform
    }

    pub fn partition(&self) -> &[Vec<usize>] {
        &self.partition
    }

    pub fn components(&self) -> &[(BaseFunction, f64)] {
        &self.components
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let d = x.len();
        let mut scratch = vec![0.0; d];
        let mut z = vec![0.0; d];
        self.transform.apply_into(x, &mut scratch, &mut z);
        let mut block = Vec::with_capacity(d);
        let mut total = self.transform.bias;
        for (idx, (base, w)) in self.partition.iter().zip(&self.components) {
            block.clear();
            block.extend(idx.iter().map(|&i| z[i]));
            total += w * base.eval(&block);
        }
        total
    }
}

pub fn hybrid_eval(spec: &HybridSpec, x: &[f64]) -> Result<f64> {
    if x.len() != spec.transform.dim() {
        return arg(format!(
            "point has {} coordinates, hybrid expects {}",
            x.len(),
            spec.transform.dim()
        ));
    }
    Ok(spec.eval_unchecked(x))
}

impl Objective for HybridSpec {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.eval_unchecked(x)
    }
}
