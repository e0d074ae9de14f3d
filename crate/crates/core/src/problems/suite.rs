//! Seeded CEC-style problem suites.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{arg, Error, Result};
use crate::problems::{
    load_transform_data, random_orthogonal, BaseFunction, Category, CompositionComponent,
    CompositionSpec, HybridSpec, Problem, TransformSpec,
};
use crate::rng::RngState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    /// Twelve problems: 2 unimodal, 4 basic, 3 hybrid, 3 composition.
    Desk,
    /// Every base function, shifted and rotated.
    Base,
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(SuiteKind::Desk),
            "base" => Ok(SuiteKind::Base),
            other => arg(format!("unknown suite kind '{other}' (expected desk or base)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub kind: SuiteKind,
    pub dim: usize,
    /// Half-width of the symmetric search box.
    pub bound: f64,
    /// Directory of transform files named `F<nn>_D<dim>.txt` (composition
    /// components: `F<nn>_c<k>_D<dim>.txt`). Present files override the
    /// generated shift, rotation and bias of that problem.
    pub transform_dir: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn desk(dim: usize) -> Self {
        Self {
            kind: SuiteKind::Desk,
            dim,
            bound: 100.0,
            transform_dir: None,
        }
    }
}

enum Entry {
    Single(Category, BaseFunction),
    Hybrid(&'static [(BaseFunction, f64)]),
    // (base, sigma, lambda)
    Composition(&'static [(BaseFunction, f64, f64)]),
}

use BaseFunction as B;

const DESK: [(&str, Entry); 12] = [
    ("bent_cigar", Entry::Single(Category::Unimodal, B::BentCigar)),
    ("zakharov", Entry::Single(Category::Unimodal, B::Zakharov)),
    ("rosenbrock", Entry::Single(Category::Basic, B::Rosenbrock)),
    ("rastrigin", Entry::Single(Category::Basic, B::Rastrigin)),
    ("levy", Entry::Single(Category::Basic, B::Levy)),
    ("modified_schwefel", Entry::Single(Category::Basic, B::ModifiedSchwefel)),
    ("hybrid1", Entry::Hybrid(&[(B::Zakharov, 0.2), (B::Rosenbrock, 0.4), (B::Rastrigin, 0.4)])),
    ("hybrid2", Entry::Hybrid(&[(B::BentCigar, 0.3), (B::Hgbat, 0.3), (B::Rastrigin, 0.4)])),
    (
        "hybrid3",
        Entry::Hybrid(&[
            (B::SchafferF7, 0.2),
            (B::Hgbat, 0.2),
            (B::Rosenbrock, 0.3),
            (B::ModifiedSchwefel, 0.3),
        ]),
    ),
    (
        "composition1",
        Entry::Composition(&[(B::Rastrigin, 10.0, 1.0), (B::Griewank, 20.0, 10.0), (B::ModifiedSchwefel, 30.0, 1.0)]),
    ),
    (
        "composition2",
        Entry::Composition(&[(B::Rosenbrock, 10.0, 1.0), (B::BentCigar, 20.0, 1e-6), (B::Rastrigin, 30.0, 1.0)]),
    ),
    (
        "composition3",
        Entry::Composition(&[
            (B::Ackley, 10.0, 1.0),
            (B::HappyCat, 20.0, 1.0),
            (B::Hgbat, 20.0, 1.0),
            (B::SchafferF7, 30.0, 1.0),
        ]),
    ),
];

/// Problem labels of the desk suite in order (without index or dimension).
pub fn desk_suite_names() -> Vec<&'static str> {
    DESK.iter().map(|(n, _)| *n).collect()
}

fn problem_name(index: usize, label: &str, dim: usize) -> String {
    format!("F{index:02}_{label}_D{dim}")
}

struct Builder<'a> {
    cfg: &'a SuiteConfig,
    rng: &'a mut RngState,
}

impl Builder<'_> {
    fn random_transform(&mut self, shrink: f64, bias: f64) -> TransformSpec {
        let d = self.cfg.dim;
        let reach = 0.8 * self.cfg.bound;
        let shift = (0..d).map(|_| self.rng.uniform_in(-reach, reach)).collect();
        TransformSpec {
            shift,
            rotation: random_orthogonal(self.rng, d),
            bias,
            shrink,
        }
    }

    fn file_override(&self, stem: &str, spec: &mut TransformSpec) -> Result<()> {
        let Some(dir) = &self.cfg.transform_dir else {
            return Ok(());
        };
        let path = dir.join(format!("{stem}_D{}.txt", self.cfg.dim));
        if !path.exists() {
            return Ok(());
        }
        let loaded = load_transform_data(&path, self.cfg.dim)?;
        spec.shift = loaded.shift;
        spec.rotation = loaded.rotation;
        if loaded.bias != 0.0 {
            spec.bias = loaded.bias;
        }
        Ok(())
    }

    fn single(&mut self, index: usize, label: &str, cat: Category, base: BaseFunction) -> Result<Problem> {
        let mut spec = self.random_transform(base.natural_shrink(), 100.0 * index as f64);
        self.file_override(&format!("F{index:02}"), &mut spec)?;
        Problem::transformed(problem_name(index, label, self.cfg.dim), cat, base, spec, self.cfg.bound)
    }

    fn hybrid(&mut self, index: usize, label: &str, parts: &[(BaseFunction, f64)]) -> Result<Problem> {
        let d = self.cfg.dim;
        if d < parts.len() {
            return arg(format!("{label} needs D >= {}", parts.len()));
        }
        let mut spec = self.random_transform(1.0, 100.0 * index as f64);
        self.file_override(&format!("F{index:02}"), &mut spec)?;
        let mut perm: Vec<usize> = (0..d).collect();
        self.rng.shuffle(&mut perm);
        let proportions: Vec<f64> = parts.iter().map(|(_, p)| *p).collect();
        let partition = HybridSpec::proportional_partition(&perm, &proportions);
        let components = parts.iter().map(|(b, _)| (*b, 1.0)).collect();
        let shift = spec.shift.clone();
        let bias = spec.bias;
        let h = HybridSpec::new(spec, partition, components)?;
        Ok(Problem::new(
            problem_name(index, label, d),
            vec![-self.cfg.bound; d],
            vec![self.cfg.bound; d],
            bias,
            Arc::new(h),
        )?
        .with_category(Category::Hybrid)
        .with_optimum_position(shift))
    }

    fn composition(&mut self, index: usize, label: &str, parts: &[(BaseFunction, f64, f64)]) -> Result<Problem> {
        let d = self.cfg.dim;
        let mut components = Vec::with_capacity(parts.len());
        for (k, &(base, sigma, lambda)) in parts.iter().enumerate() {
            let mut spec = self.random_transform(base.natural_shrink(), 0.0);
            self.file_override(&format!("F{index:02}_c{}", k + 1), &mut spec)?;
            spec.bias = 0.0;
            let problem = Problem::transformed(
                format!("{label}_c{}", k + 1),
                Category::Basic,
                base,
                spec,
                self.cfg.bound,
            )?;
            components.push(CompositionComponent {
                problem,
                sigma,
                lambda,
                bias: 100.0 * k as f64,
            });
        }
        let centre = components[0].problem.optimum_position().map(<[f64]>::to_vec);
        let global_bias = 100.0 * index as f64;
        let spec = CompositionSpec::new(components, global_bias)?;
        let mut p = Problem::new(
            problem_name(index, label, d),
            vec![-self.cfg.bound; d],
            vec![self.cfg.bound; d],
            global_bias,
            Arc::new(spec),
        )?
        .with_category(Category::Composition);
        if let Some(c) = centre {
            p = p.with_optimum_position(c);
        }
        Ok(p)
    }
}

/// Builds the configured suite. Known optima carry a bias of `100 * index`.
pub fn make_suite(cfg: &SuiteConfig, rng: &mut RngState) -> Result<Vec<Problem>> {
    if cfg.dim == 0 {
        return arg("suite dimension must be >= 1");
    }
    if !(cfg.bound > 0.0) {
        return arg("suite bound must be positive");
    }
    let mut b = Builder { cfg, rng };
    match cfg.kind {
        SuiteKind::Desk => DESK
            .iter()
            .enumerate()
            .map(|(i, (label, entry))| {
                let idx = i + 1;
                match entry {
                    Entry::Single(cat, base) => b.single(idx, label, *cat, *base),
                    Entry::Hybrid(parts) => b.hybrid(idx, label, parts),
                    Entry::Composition(parts) => b.composition(idx, label, parts),
                }
            })
            .collect(),
        SuiteKind::Base => BaseFunction::ALL
            .iter()
            .enumerate()
            .map(|(i, base)| b.single(i + 1, base.name(), Category::Basic, *base))
            .collect(),
    }
}
