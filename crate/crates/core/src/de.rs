//! Differential-evolution building blocks and the classic DE/rand/1/bin
//! optimizer.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::problems::Problem;
use crate::rng::RngState;
use crate::trace::{BudgetedEvaluator, RunTrace};
use crate::Optimizer;

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub position: Vec<f64>,
    /// `None` until evaluated.
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn new(position: Vec<f64>) -> Self {
        Self { position, fitness: None }
    }

    pub fn evaluated(position: Vec<f64>, fitness: f64) -> Self {
        Self {
            position,
            fitness: Some(fitness),
        }
    }

    pub fn fitness(&self) -> Result<f64> {
        self.fitness
            .ok_or_else(|| Error::State("individual has not been evaluated".into()))
    }

    fn fitness_or_inf(&self) -> f64 {
        self.fitness.unwrap_or(f64::INFINITY)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.members[i].position
    }

    /// Index of the smallest evaluated fitness; ties go to the lowest index.
    pub fn best_index(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, m) in self.members.iter().enumerate() {
            if let Some(f) = m.fitness {
                if best.is_none_or(|(_, b)| f < b) {
                    best = Some((i, f));
                }
            }
        }
        best.map(|(i, _)| i)
    }

    /// Member indices sorted by ascending fitness (stable, so ties keep
    /// index order). Unevaluated members sort last.
    pub fn ranked(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| {
            self.members[a]
                .fitness_or_inf()
                .total_cmp(&self.members[b].fitness_or_inf())
        });
        idx
    }

    pub fn fitnesses(&self) -> Vec<f64> {
        self.members.iter().map(Individual::fitness_or_inf).collect()
    }

    /// Removes the `len - target` worst members.
    pub fn truncate_worst(&mut self, target: usize) {
        if target >= self.len() {
            return;
        }
        let keep = self.ranked();
        let mut keep_mask = vec![false; self.len()];
        for &i in &keep[..target] {
            keep_mask[i] = true;
        }
        let mut i = 0;
        self.members.retain(|_| {
            let k = keep_mask[i];
            i += 1;
            k
        });
    }
}

/// Displaced parents kept as extra difference-vector donors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Archive {
    pub members: Vec<Vec<f64>>,
    capacity: usize,
}

impl Archive {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            members: Vec::with_capacity(capacity),
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Adds `x`; when full, a uniformly chosen member is overwritten.
    pub fn push(&mut self, x: Vec<f64>, rng: &mut RngState) {
        if self.capacity == 0 {
            return;
        }
        if self.members.len() < self.capacity {
            self.members.push(x);
        } else {
            let k = rng.index(self.members.len());
            self.members[k] = x;
        }
    }

    /// Changes the capacity, evicting random members on overflow.
    pub fn resize(&mut self, capacity: usize, rng: &mut RngState) {
        self.capacity = capacity;
        while self.members.len() > capacity {
            let k = rng.index(self.members.len());
            self.members.swap_remove(k);
        }
    }
}

fn need(pop: &Population, n: usize, what: &str) -> Result<()> {
    if pop.len() < n {
        return Err(Error::State(format!(
            "{what} needs a population of at least {n}, have {}",
            pop.len()
        )));
    }
    Ok(())
}

fn axpy_diff(base: &[f64], f: f64, a: &[f64], b: &[f64]) -> Vec<f64> {
    base.iter()
        .zip(a.iter().zip(b))
        .map(|(x, (p, q))| x + f * (p - q))
        .collect()
}

/// `v = x_r1 + F (x_r2 - x_r3)` with `r1, r2, r3, i` distinct.
pub fn mutate_rand_1(pop: &Population, i: usize, f: f64, rng: &mut RngState) -> Result<Vec<f64>> {
    need(pop, 4, "rand/1 mutation")?;
    let n = pop.len();
    let r1 = rng.index_excluding(n, &[i]).unwrap();
    let r2 = rng.index_excluding(n, &[i, r1]).unwrap();
    let r3 = rng.index_excluding(n, &[i, r1, r2]).unwrap();
    Ok(axpy_diff(pop.position(r1), f, pop.position(r2), pop.position(r3)))
}

/// `v = x_best + F (x_r1 - x_r2)` with `r1, r2, i` distinct.
pub fn mutate_best_1(pop: &Population, i: usize, f: f64, rng: &mut RngState) -> Result<Vec<f64>> {
    need(pop, 3, "best/1 mutation")?;
    let best = pop
        .best_index()
        .ok_or_else(|| Error::State("best/1 mutation needs an evaluated member".into()))?;
    let n = pop.len();
    let r1 = rng.index_excluding(n, &[i]).unwrap();
    let r2 = rng.index_excluding(n, &[i, r1]).unwrap();
    Ok(axpy_diff(pop.position(best), f, pop.position(r1), pop.position(r2)))
}

/// Size of the p-best pool, `ceil(p * n)` clamped to `1..=n`.
pub fn pbest_pool_size(p: f64, n: usize) -> usize {
    ((p * n as f64).ceil() as usize).clamp(1, n)
}

/// `v = x_i + F_w F (x_pbest - x_i) + F (x_r1 - x_r2)`.
///
/// `x_pbest` is drawn from the `ceil(p |P|)` best members, `r1` from the
/// population without `i`, `r2` from population and archive without `i` and
/// `r1`. With `F_w = 1` this is plain current-to-pbest/1.
pub fn mutate_current_to_pbest(
    pop: &Population,
    archive: &Archive,
    i: usize,
    f: f64,
    f_w: f64,
    p: f64,
    rng: &mut RngState,
) -> Result<Vec<f64>> {
    let ranked = pop.ranked();
    mutate_current_to_pbest_ranked(pop, &ranked, archive, i, f, f_w, p, rng)
}

/// As [`mutate_current_to_pbest`] with the fitness ranking precomputed.
#[allow(clippy::too_many_arguments)]
pub fn mutate_current_to_pbest_ranked(
    pop: &Population,
    ranked: &[usize],
    archive: &Archive,
    i: usize,
    f: f64,
    f_w: f64,
    p: f64,
    rng: &mut RngState,
) -> Result<Vec<f64>> {
    need(pop, 3, "current-to-pbest mutation")?;
    if !(p > 0.0 && p <= 1.0) {
        return arg(format!("p-best fraction must lie in (0, 1], got {p}"));
    }
    let n = pop.len();
    let pool = pbest_pool_size(p, n);
    if ranked.len() < pool {
        return Err(Error::State("p-best pool is empty".into()));
    }
    let pbest = ranked[rng.index(pool)];
    let r1 = rng.index_excluding(n, &[i]).unwrap();
    let r2 = loop {
        let k = rng.index(n + archive.len());
        if k >= n || (k != i && k != r1) {
            break k;
        }
    };
    let x_i = pop.position(i);
    let x_p = pop.position(pbest);
    let x_r1 = pop.position(r1);
    let x_r2: &[f64] = if r2 < n { pop.position(r2) } else { &archive.members[r2 - n] };
    Ok((0..x_i.len())
        .map(|j| x_i[j] + f_w * f * (x_p[j] - x_i[j]) + f * (x_r1[j] - x_r2[j]))
        .collect())
}

/// Binomial crossover: coordinate `j` comes from the mutant when a fresh
/// uniform draw is below `cr` or `j` is the forced index `j_rand`.
pub fn crossover_binomial(parent: &[f64], mutant: &[f64], cr: f64, rng: &mut RngState) -> Result<Vec<f64>> {
    if parent.len() != mutant.len() {
        return arg(format!(
            "parent and mutant lengths differ ({} vs {})",
            parent.len(),
            mutant.len()
        ));
    }
    if !(0.0..=1.0).contains(&cr) {
        return arg(format!("crossover rate must lie in [0, 1], got {cr}"));
    }
    let j_rand = rng.index(parent.len());
    Ok(parent
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&x, &v))| if j == j_rand || rng.uniform() < cr { v } else { x })
        .collect())
}

/// Midpoint repair: a coordinate outside the box is moved halfway between
/// the parent's coordinate and the violated bound.
pub fn repair_bounds(trial: &mut [f64], parent: &[f64], lower: &[f64], upper: &[f64]) {
    for j in 0..trial.len() {
        if trial[j] < lower[j] {
            trial[j] = (parent[j] + lower[j]) / 2.0;
        } else if trial[j] > upper[j] {
            trial[j] = (parent[j] + upper[j]) / 2.0;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub survivor: Individual,
    /// Strict improvement over the parent.
    pub improved: bool,
    /// The parent, when the trial strictly improved on it.
    pub displaced: Option<Individual>,
}

/// Greedy one-to-one selection; the trial wins ties.
pub fn select_greedy(parent: Individual, trial: Individual) -> Result<Selection> {
    let fp = parent.fitness()?;
    let ft = trial.fitness()?;
    Ok(if ft < fp {
        Selection {
            survivor: trial,
            improved: true,
            displaced: Some(parent),
        }
    } else if ft == fp {
        Selection {
            survivor: trial,
            improved: false,
            displaced: None,
        }
    } else {
        Selection {
            survivor: parent,
            improved: false,
            displaced: None,
        }
    })
}

/// Uniform random population in the problem box, evaluated within budget.
pub(crate) fn evaluate_all(points: Vec<Vec<f64>>, ev: &mut BudgetedEvaluator<'_>) -> Population {
    let members = points
        .into_iter()
        .take(ev.remaining())
        .map(|x| {
            let f = ev.evaluate(&x);
            Individual::evaluated(x, f)
        })
        .collect();
    Population::new(members)
}

pub(crate) fn uniform_points(problem: &Problem, n: usize, rng: &mut RngState) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            problem
                .lower()
                .iter()
                .zip(problem.upper())
                .map(|(l, u)| rng.uniform_in(*l, *u))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeConfig {
    /// Population size; `None` means `10 D`.
    pub pop_size: Option<usize>,
    pub f: f64,
    pub cr: f64,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            pop_size: None,
            f: 0.5,
            cr: 0.9,
        }
    }
}

impl DeConfig {
    pub fn population_size(&self, dim: usize) -> usize {
        self.pop_size.unwrap_or(10 * dim).max(4)
    }
}

/// Classic DE/rand/1/bin with synchronous generations and midpoint repair.
pub fn run_de(
    problem: &Problem,
    max_evals: usize,
    config: &DeConfig,
    checkpoint_every: usize,
    rng: &mut RngState,
) -> Result<RunTrace> {
    let n = config.population_size(problem.dim());
    if max_evals < n {
        return arg(format!("budget {max_evals} is smaller than the population ({n})"));
    }
    let mut ev = BudgetedEvaluator::new(problem, max_evals, checkpoint_every);
    let mut pop = evaluate_all(uniform_points(problem, n, rng), &mut ev);
    let mut sizes = Vec::new();
    while !ev.exhausted() {
        sizes.push((ev.count(), pop.len()));
        let mut next = pop.members.clone();
        for (i, slot) in next.iter_mut().enumerate() {
            if ev.exhausted() {
                break;
            }
            let parent = &pop.members[i];
            let mutant = mutate_rand_1(&pop, i, config.f, rng)?;
            let mut trial = crossover_binomial(&parent.position, &mutant, config.cr, rng)?;
            repair_bounds(&mut trial, &parent.position, problem.lower(), problem.upper());
            let f = ev.evaluate(&trial);
            *slot = select_greedy(parent.clone(), Individual::evaluated(trial, f))?.survivor;
        }
        pop.members = next;
    }
    Ok(ev.finish(sizes, Vec::new()))
}

#[derive(Debug, Clone, Default)]
pub struct De {
    pub config: DeConfig,
}

impl Optimizer for De {
    fn name(&self) -> &str {
        "de"
    }

    fn min_budget(&self, problem: &Problem, _max_evals: usize) -> usize {
        self.config.population_size(problem.dim())
    }

    fn run(&self, problem: &Problem, max_evals: usize, every: usize, rng: &mut RngState) -> Result<RunTrace> {
        run_de(problem, max_evals, &self.config, every, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;
    use std::sync::Arc;

    fn pop_of(points: &[&[f64]]) -> Population {
        Population::new(
            points
                .iter()
                .enumerate()
                .map(|(i, p)| Individual::evaluated(p.to_vec(), i as f64))
                .collect(),
        )
    }

    #[test]
    fn rand_1_degenerate_cases() {
        let mut rng = seed_rng(1);
        let pop = pop_of(&[&[1.0, 1.0], &[2.0, 3.0], &[5.0, -1.0], &[0.0, 4.0], &[9.0, 9.0]]);
        for _ in 0..50 {
            let v = mutate_rand_1(&pop, 0, 0.0, &mut rng).unwrap();
            assert!(pop.members[1..].iter().any(|m| m.position == v));
        }
        let same = pop_of(&[&[0.0, 0.0], &[7.0, 7.0], &[7.0, 7.0], &[7.0, 7.0]]);
        for _ in 0..20 {
            assert_eq!(mutate_rand_1(&same, 0, 0.8, &mut rng).unwrap(), vec![7.0, 7.0]);
        }
        assert!(matches!(
            mutate_rand_1(&pop_of(&[&[0.0], &[1.0], &[2.0]]), 0, 0.5, &mut rng),
            Err(Error::State(_))
        ));
    }

    #[test]
    fn rand_1_hand_value() {
        // target i = 3 so r1, r2, r3 is a permutation of {0, 1, 2}
        let pop = pop_of(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[50.0, 50.0]]);
        let mut rng = seed_rng(2);
        let mut seen = false;
        for _ in 0..200 {
            let v = mutate_rand_1(&pop, 3, 0.5, &mut rng).unwrap();
            if v == vec![0.5, -0.5] {
                seen = true;
            }
        }
        assert!(seen, "the (0, 1, 2) ordering never appeared");
    }

    #[test]
    fn best_1_cases() {
        let mut rng = seed_rng(3);
        let pop = pop_of(&[&[1.0, 1.0], &[4.0, 2.0], &[2.0, 2.0], &[3.0, 3.0]]);
        assert_eq!(mutate_best_1(&pop, 3, 0.0, &mut rng).unwrap(), vec![1.0, 1.0]);
        let ties = pop_of(&[&[1.0, 1.0], &[6.0, 6.0], &[6.0, 6.0], &[6.0, 6.0]]);
        assert_eq!(mutate_best_1(&ties, 0, 0.9, &mut rng).unwrap(), vec![1.0, 1.0]);
        // i = 0 = best, population {best, (4,2), (2,2)} -> r1, r2 over {1, 2}
        let pop3 = pop_of(&[&[1.0, 1.0], &[4.0, 2.0], &[2.0, 2.0]]);
        let v = mutate_best_1(&pop3, 0, 0.5, &mut rng).unwrap();
        assert!(v == vec![2.0, 1.0] || v == vec![0.0, 1.0]);
    }

    #[test]
    fn current_to_pbest_cases() {
        let mut rng = seed_rng(4);
        let pop = pop_of(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0], &[3.0, 3.0]]);
        let empty = Archive::with_capacity(0);
        for i in 0..4 {
            let v = mutate_current_to_pbest(&pop, &empty, i, 0.0, 1.3, 0.5, &mut rng).unwrap();
            assert_eq!(v, pop.members[i].position);
        }
        // i = 0 is the best and p = 1/N: pbest is x_i itself
        for _ in 0..50 {
            let v = mutate_current_to_pbest(&pop, &empty, 0, 0.5, 1.0, 0.25, &mut rng).unwrap();
            let ok = [1usize, 2, 3].iter().any(|&a| {
                [1usize, 2, 3].iter().any(|&b| {
                    a != b && v == axpy_diff(&[0.0, 0.0], 0.5, pop.position(a), pop.position(b))
                })
            });
            assert!(ok, "{v:?}");
        }
    }

    #[test]
    fn current_to_pbest_hand_value() {
        // x_i = (0,0); best two are (1,0) and... make pbest pool = {x_1} only
        let pop = Population::new(vec![
            Individual::evaluated(vec![0.0, 0.0], 5.0),
            Individual::evaluated(vec![1.0, 0.0], 0.0),
            Individual::evaluated(vec![0.0, 1.0], 6.0),
        ]);
        // r1 over {1, 2}, r2 over the rest; archive holds (0,0)
        let mut archive = Archive::with_capacity(4);
        archive.push(vec![0.0, 0.0], &mut seed_rng(0));
        let mut rng = seed_rng(5);
        let mut seen = false;
        for _ in 0..500 {
            let v = mutate_current_to_pbest(&pop, &archive, 0, 0.5, 1.2, 1.0 / 3.0, &mut rng).unwrap();
            if (v[0] - 0.6).abs() < 1e-12 && (v[1] - 0.5).abs() < 1e-12 {
                seen = true;
            }
        }
        assert!(seen, "r1 = (0,1), r2 = archived (0,0) never drawn");
        assert!(mutate_current_to_pbest(&pop, &archive, 0, 0.5, 1.0, 0.0, &mut rng).is_err());
    }

    #[test]
    fn crossover_cases() {
        let mut rng = seed_rng(6);
        let parent = [0.0; 6];
        let mutant = [1.0; 6];
        assert_eq!(crossover_binomial(&parent, &mutant, 1.0, &mut rng).unwrap(), mutant.to_vec());
        for _ in 0..100 {
            let u = crossover_binomial(&parent, &mutant, 0.0, &mut rng).unwrap();
            assert_eq!(u.iter().filter(|v| **v == 1.0).count(), 1);
        }
        for cr in [0.0, 0.3, 1.0] {
            assert_eq!(crossover_binomial(&[2.0], &[5.0], cr, &mut rng).unwrap(), vec![5.0]);
        }
        assert!(crossover_binomial(&parent, &mutant, 1.5, &mut rng).is_err());
        assert!(crossover_binomial(&parent, &[1.0], 0.5, &mut rng).is_err());
    }

    #[test]
    fn repair_cases() {
        let lo = [0.0, 0.0, 0.0];
        let hi = [1.0, 1.0, 1.0];
        let mut t = [0.5, 0.2, 0.9];
        repair_bounds(&mut t, &[0.1, 0.1, 0.1], &lo, &hi);
        assert_eq!(t, [0.5, 0.2, 0.9]);
        let mut t = [-3.0, 7.0, 0.5];
        repair_bounds(&mut t, &[0.4, 0.8, 0.5], &lo, &hi);
        assert!((t[0] - 0.2).abs() < 1e-15 && (t[1] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn selection_cases() {
        let p = Individual::evaluated(vec![0.0], 2.0);
        let s = select_greedy(p.clone(), Individual::evaluated(vec![1.0], 1.0)).unwrap();
        assert!(s.improved && s.survivor.position == vec![1.0] && s.displaced == Some(p.clone()));
        let s = select_greedy(p.clone(), Individual::evaluated(vec![1.0], 2.0)).unwrap();
        assert!(!s.improved && s.survivor.position == vec![1.0] && s.displaced.is_none());
        let s = select_greedy(p.clone(), Individual::evaluated(vec![1.0], 3.0)).unwrap();
        assert!(!s.improved && s.survivor == p);
        assert!(select_greedy(p, Individual::new(vec![1.0])).is_err());
    }

    #[test]
    fn archive_capacity() {
        let mut rng = seed_rng(7);
        let mut a = Archive::with_capacity(3);
        for k in 0..10 {
            a.push(vec![k as f64], &mut rng);
            assert!(a.len() <= 3);
        }
        a.resize(10, &mut rng);
        for k in 0..7 {
            a.push(vec![k as f64], &mut rng);
        }
        assert_eq!(a.len(), 10);
        a.resize(5, &mut rng);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn truncate_removes_worst() {
        let mut pop = Population::new(vec![
            Individual::evaluated(vec![0.0], 3.0),
            Individual::evaluated(vec![1.0], 1.0),
            Individual::evaluated(vec![2.0], 2.0),
        ]);
        pop.truncate_worst(2);
        assert_eq!(pop.fitnesses(), vec![1.0, 2.0]);
        assert_eq!(pop.best_index(), Some(0));
    }

    #[test]
    fn de_converges_on_sphere() {
        let p = Problem::new(
            "sphere",
            vec![-5.0; 4],
            vec![5.0; 4],
            0.0,
            Arc::new(|x: &[f64]| x.iter().map(|v| v * v).sum()),
        )
        .unwrap();
        let t = run_de(&p, 20_000, &DeConfig::default(), 100, &mut seed_rng(1)).unwrap();
        assert_eq!(t.evaluations, 20_000);
        assert!(t.best_value < 1e-8, "{}", t.best_value);
        assert!(run_de(&p, 10, &DeConfig::default(), 100, &mut seed_rng(1)).is_err());
    }

    proptest::proptest! {
        #[test]
        fn repair_idempotent_and_in_bounds(
            trial in proptest::collection::vec(-10.0f64..10.0, 5),
            parent in proptest::collection::vec(-1.0f64..1.0, 5),
        ) {
            let lo = [-1.0; 5];
            let hi = [1.0; 5];
            let mut once = trial.clone();
            repair_bounds(&mut once, &parent, &lo, &hi);
            let mut twice = once.clone();
            repair_bounds(&mut twice, &parent, &lo, &hi);
            proptest::prop_assert_eq!(&once, &twice);
            proptest::prop_assert!(once.iter().all(|v| (-1.0..=1.0).contains(v)));
        }

        #[test]
        fn crossover_takes_coordinates_verbatim(seed in 0u64..1000, cr in 0.0f64..=1.0) {
            let mut rng = seed_rng(seed);
            let parent: Vec<f64> = (0..8).map(|_| rng.uniform()).collect();
            let mutant: Vec<f64> = (0..8).map(|_| 2.0 + rng.uniform()).collect();
            let u = crossover_binomial(&parent, &mutant, cr, &mut rng).unwrap();
            proptest::prop_assert!(u.iter().zip(&parent).zip(&mutant).all(|((a, b), c)| a == b || a == c));
            proptest::prop_assert!(u.iter().zip(&mutant).any(|(a, c)| a == c));
        }

        #[test]
        fn donor_indices_distinct(seed in 0u64..2000, n in 4usize..9, i_raw in 0usize..9) {
            // positions are unit vectors, so the mutant reveals r1, r2, r3
            let i = i_raw % n;
            let points: Vec<Vec<f64>> = (0..n).map(|k| {
                let mut e = vec![0.0; n];
                e[k] = 1.0;
                e
            }).collect();
            let pop = Population::new(points.into_iter().map(|p| Individual::evaluated(p, 0.0)).collect());
            let mut rng = seed_rng(seed);
            let v = mutate_rand_1(&pop, i, 0.5, &mut rng).unwrap();
            let r1 = v.iter().position(|x| *x == 1.0).unwrap();
            let r2 = v.iter().position(|x| *x == 0.5).unwrap();
            let r3 = v.iter().position(|x| *x == -0.5).unwrap();
            let mut all = vec![i, r1, r2, r3];
            all.sort();
            all.dedup();
            proptest::prop_assert_eq!(all.len(), 4);
        }
    }
}
