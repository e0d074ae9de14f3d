//! Success-history adaptation: LSHADE and jSO.

use serde::{Deserialize, Serialize};

use crate::de::{
    crossover_binomial, evaluate_all, mutate_current_to_pbest_ranked, repair_bounds, select_greedy, uniform_points,
    Archive, Individual, Population,
};
use crate::error::{arg, Result};
use crate::problems::Problem;
use crate::rng::RngState;
use crate::trace::{BudgetedEvaluator, RunTrace};
use crate::Optimizer;

const LOCKED_VALUE: f64 = 0.9;
const SAMPLE_SCALE: f64 = 0.1;

/// The `H`-slot memories of successful `F` and `CR` values.
///
/// A `None` crossover slot is the terminal marker: once written it pins the
/// crossover rate of that slot to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessHistory {
    m_f: Vec<f64>,
    m_cr: Vec<Option<f64>>,
    write_index: usize,
    lock_last: bool,
}

impl SuccessHistory {
    /// `slots` counts every slot, including the locked one when `lock_last`.
    pub fn new(slots: usize, f_init: f64, cr_init: f64, lock_last: bool) -> Result<Self> {
        let min = if lock_last { 2 } else { 1 };
        if slots < min {
            return arg(format!("memory needs at least {min} slots, got {slots}"));
        }
        if !(f_init > 0.0 && f_init <= 1.0) || !(0.0..=1.0).contains(&cr_init) {
            return arg(format!("initial memory values out of range (F {f_init}, CR {cr_init})"));
        }
        let mut m_f = vec![f_init; slots];
        let mut m_cr = vec![Some(cr_init); slots];
        if lock_last {
            m_f[slots - 1] = LOCKED_VALUE;
            m_cr[slots - 1] = Some(LOCKED_VALUE);
        }
        Ok(Self {
            m_f,
            m_cr,
            write_index: 0,
            lock_last,
        })
    }

    pub fn slots(&self) -> usize {
        self.m_f.len()
    }

    pub fn m_f(&self) -> &[f64] {
        &self.m_f
    }

    pub fn m_cr(&self) -> &[Option<f64>] {
        &self.m_cr
    }

    pub fn write_index(&self) -> usize {
        self.write_index
    }

    pub fn lock_last(&self) -> bool {
        self.lock_last
    }

    fn writable(&self) -> usize {
        if self.lock_last {
            self.slots() - 1
        } else {
            self.slots()
        }
    }

    /// Weighted Lehmer-mean update of the slot at the write index.
    pub fn update(&mut self, log: &GenerationLog) {
        if log.is_empty() {
            return;
        }
        let total: f64 = log.delta_f.iter().sum();
        let w: Vec<f64> = log.delta_f.iter().map(|d| d / total).collect();
        let lehmer = |vals: &[f64]| {
            let num: f64 = w.iter().zip(vals).map(|(w, v)| w * v * v).sum();
            let den: f64 = w.iter().zip(vals).map(|(w, v)| w * v).sum();
            num / den
        };
        let k = self.write_index;
        let f = lehmer(&log.s_f);
        if f.is_finite() {
            self.m_f[k] = f.clamp(f64::MIN_POSITIVE, 1.0);
        }
        let all_zero = log.s_cr.iter().all(|c| *c == 0.0);
        self.m_cr[k] = match self.m_cr[k] {
            None => None,
            Some(_) if all_zero => None,
            Some(old) => {
                let cr = lehmer(&log.s_cr);
                Some(if cr.is_finite() { cr.clamp(0.0, 1.0) } else { old })
            }
        };
        self.write_index = (k + 1) % self.writable();
    }
}

/// Successful parameters of one generation with their improvements.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GenerationLog {
    pub s_f: Vec<f64>,
    pub s_cr: Vec<f64>,
    pub delta_f: Vec<f64>,
}

impl GenerationLog {
    /// Records a success; non-positive improvements are ignored.
    pub fn push(&mut self, f: f64, cr: f64, delta_f: f64) {
        if delta_f > 0.0 && delta_f.is_finite() {
            self.s_f.push(f);
            self.s_cr.push(cr);
            self.delta_f.push(delta_f);
        }
    }

    pub fn len(&self) -> usize {
        self.s_f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s_f.is_empty()
    }
}

/// Draws `(F, CR)` from a uniformly chosen memory slot.
pub fn sample_parameters(mem: &SuccessHistory, rng: &mut RngState, tau: f64, jso_mode: bool) -> (f64, f64) {
    let r = rng.index(mem.slots());
    let (f, cr) = draw_raw(mem.m_f[r], mem.m_cr[r], rng);
    if jso_mode {
        jso_clamp(f, cr, tau)
    } else {
        (f, cr)
    }
}

fn draw_raw(m_f: f64, m_cr: Option<f64>, rng: &mut RngState) -> (f64, f64) {
    let cr = match m_cr {
        None => 0.0,
        Some(m) => rng.normal(m, SAMPLE_SCALE).expect("positive scale").clamp(0.0, 1.0),
    };
    let f = loop {
        let f = rng.cauchy(m_f, SAMPLE_SCALE).expect("positive scale");
        if f > 0.0 {
            break f.min(1.0);
        }
    };
    (f, cr)
}

/// Progress-dependent jSO clamps on a raw `(F, CR)` draw.
pub fn jso_clamp(f: f64, cr: f64, tau: f64) -> (f64, f64) {
    let f = if tau < 0.6 { f.min(0.7) } else { f };
    let cr = if tau < 0.25 {
        cr.max(0.7)
    } else if tau < 0.5 {
        cr.max(0.6)
    } else {
        cr
    };
    (f, cr)
}

/// Weight on the p-best attraction term.
pub fn fw_schedule(tau: f64) -> f64 {
    if tau < 0.2 {
        0.7
    } else if tau < 0.4 {
        0.8
    } else {
        1.2
    }
}

/// Linear p-best fraction schedule.
pub fn pbest_schedule(tau: f64, p_init: f64, p_final: f64) -> f64 {
    p_init + tau * (p_final - p_init)
}

/// Functional form of [`SuccessHistory::update`].
pub fn update_memory(mem: &SuccessHistory, log: &GenerationLog) -> SuccessHistory {
    let mut out = mem.clone();
    out.update(log);
    out
}

/// Linear population size reduction, exact in integer arithmetic.
pub fn lpsr_size(n_init: usize, n_min: usize, nfe: usize, max_nfe: usize) -> usize {
    if max_nfe == 0 || n_min >= n_init {
        return n_init.max(n_min);
    }
    let nfe = nfe.min(max_nfe) as u128;
    let drop = (n_init - n_min) as u128 * nfe / max_nfe as u128;
    n_init - drop as usize
}

/// Removes the worst members down to `target` and rescales the archive to
/// `round(ratio * target)`.
pub fn shrink_population(
    pop: &mut Population,
    archive: &mut Archive,
    target: usize,
    archive_ratio: f64,
    rng: &mut RngState,
) -> Result<()> {
    if target < 1 {
        return arg("population target must be at least 1");
    }
    if target < pop.len() {
        pop.truncate_worst(target);
    }
    archive.resize(archive_capacity(archive_ratio, pop.len()), rng);
    Ok(())
}

pub(crate) fn archive_capacity(ratio: f64, n: usize) -> usize {
    (ratio * n as f64).round() as usize
}

/// Per-generation knobs of the shared SHADE step.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StepParams {
    pub tau: f64,
    pub p: f64,
    pub f_w: f64,
    pub jso_mode: bool,
}

/// One synchronous generation of current-to-pbest/1/bin with memory
/// sampling, archive feeding and the memory update. Stops early when the
/// budget runs out.
pub(crate) fn shade_generation(
    pop: &mut Population,
    archive: &mut Archive,
    mem: &mut SuccessHistory,
    step: StepParams,
    ev: &mut BudgetedEvaluator<'_>,
    rng: &mut RngState,
) -> Result<()> {
    let n = pop.len();
    let p = step.p.max(2.0 / n as f64).min(1.0);
    let ranked = pop.ranked();
    let problem = ev.problem().clone();
    let mut trials = Vec::with_capacity(n);
    for i in 0..n {
        if ev.exhausted() {
            break;
        }
        let (f, cr) = sample_parameters(mem, rng, step.tau, step.jso_mode);
        let mutant = mutate_current_to_pbest_ranked(pop, &ranked, archive, i, f, step.f_w, p, rng)?;
        let parent = &pop.members[i].position;
        let mut u = crossover_binomial(parent, &mutant, cr, rng)?;
        repair_bounds(&mut u, parent, problem.lower(), problem.upper());
        let fu = ev.evaluate(&u);
        trials.push((Individual::evaluated(u, fu), f, cr));
    }
    let mut log = GenerationLog::default();
    for (i, (trial, f, cr)) in trials.into_iter().enumerate() {
        let parent = std::mem::replace(&mut pop.members[i], Individual::new(Vec::new()));
        let fp = parent.fitness()?;
        let ft = trial.fitness()?;
        let sel = select_greedy(parent, trial)?;
        if let Some(old) = sel.displaced {
            archive.push(old.position, rng);
            log.push(f, cr, fp - ft);
        }
        pop.members[i] = sel.survivor;
    }
    mem.update(&log);
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LshadeConfig {
    /// Initial population per dimension.
    pub pop_per_dim: f64,
    pub min_pop: usize,
    pub memory_size: usize,
    pub archive_ratio: f64,
    pub p_best: f64,
    pub f_init: f64,
    pub cr_init: f64,
}

impl Default for LshadeConfig {
    fn default() -> Self {
        Self {
            pop_per_dim: 18.0,
            min_pop: 4,
            memory_size: 6,
            archive_ratio: 2.6,
            p_best: 0.11,
            f_init: 0.5,
            cr_init: 0.5,
        }
    }
}

impl LshadeConfig {
    pub fn initial_size(&self, dim: usize) -> usize {
        ((self.pop_per_dim * dim as f64).round() as usize).max(self.min_pop).max(4)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JsoConfig {
    /// Overrides the dimension-based initial size.
    pub pop_size: Option<usize>,
    pub min_pop: usize,
    /// Slot count including the locked slot.
    pub memory_size: usize,
    pub archive_ratio: f64,
    pub p_init: f64,
    pub p_final: f64,
    pub f_init: f64,
    pub cr_init: f64,
}

impl Default for JsoConfig {
    fn default() -> Self {
        Self {
            pop_size: None,
            min_pop: 4,
            memory_size: 5,
            archive_ratio: 1.0,
            p_init: 0.25,
            p_final: 0.125,
            f_init: 0.3,
            cr_init: 0.8,
        }
    }
}

impl JsoConfig {
    pub fn initial_size(&self, dim: usize) -> usize {
        let n = self.pop_size.unwrap_or_else(|| {
            let d = dim as f64;
            (25.0 * d.sqrt().ceil() * d.ln()).round() as usize
        });
        n.max(self.min_pop).max(4)
    }
}

struct LoopSpec {
    n_init: usize,
    n_min: usize,
    archive_ratio: f64,
    jso_mode: bool,
    p: Box<dyn Fn(f64) -> f64>,
    memory: SuccessHistory,
}

fn run_shade_loop(
    problem: &Problem,
    max_evals: usize,
    spec: LoopSpec,
    checkpoint_every: usize,
    rng: &mut RngState,
) -> Result<RunTrace> {
    if max_evals < spec.n_init {
        return arg(format!(
            "budget {max_evals} is smaller than the initial population ({})",
            spec.n_init
        ));
    }
    let mut ev = BudgetedEvaluator::new(problem, max_evals, checkpoint_every);
    let mut pop = evaluate_all(uniform_points(problem, spec.n_init, rng), &mut ev);
    let mut archive = Archive::with_capacity(archive_capacity(spec.archive_ratio, spec.n_init));
    let mut mem = spec.memory;
    let mut sizes = Vec::new();
    while !ev.exhausted() {
        let target = lpsr_size(spec.n_init, spec.n_min, ev.count(), max_evals);
        shrink_population(&mut pop, &mut archive, target, spec.archive_ratio, rng)?;
        sizes.push((ev.count(), pop.len()));
        let tau = ev.progress();
        let step = StepParams {
            tau,
            p: (spec.p)(tau),
            f_w: if spec.jso_mode { fw_schedule(tau) } else { 1.0 },
            jso_mode: spec.jso_mode,
        };
        shade_generation(&mut pop, &mut archive, &mut mem, step, &mut ev, rng)?;
    }
    Ok(ev.finish(sizes, Vec::new()))
}

pub fn run_lshade(
    problem: &Problem,
    max_evals: usize,
    config: &LshadeConfig,
    checkpoint_every: usize,
    rng: &mut RngState,
) -> Result<RunTrace> {
    let p = config.p_best;
    if !(p > 0.0 && p <= 1.0) {
        return arg(format!("p_best must lie in (0, 1], got {p}"));
    }
    let spec = LoopSpec {
        n_init: config.initial_size(problem.dim()),
        n_min: config.min_pop.max(4),
        archive_ratio: config.archive_ratio,
        jso_mode: false,
        p: Box::new(move |_| p),
        memory: SuccessHistory::new(config.memory_size, config.f_init, config.cr_init, false)?,
    };
    run_shade_loop(problem, max_evals, spec, checkpoint_every, rng)
}

pub fn run_jso(
    problem: &Problem,
    max_evals: usize,
    config: &JsoConfig,
    checkpoint_every: usize,
    rng: &mut RngState,
) -> Result<RunTrace> {
    let (p0, p1) = (config.p_init, config.p_final);
    if !(p0 > 0.0 && p0 <= 1.0 && p1 > 0.0 && p1 <= 1.0) {
        return arg(format!("p-best schedule must lie in (0, 1], got {p0} -> {p1}"));
    }
    let spec = LoopSpec {
        n_init: config.initial_size(problem.dim()),
        n_min: config.min_pop.max(4),
        archive_ratio: config.archive_ratio,
        jso_mode: true,
        p: Box::new(move |tau| pbest_schedule(tau, p0, p1)),
        memory: SuccessHistory::new(config.memory_size, config.f_init, config.cr_init, true)?,
    };
    run_shade_loop(problem, max_evals, spec, checkpoint_every, rng)
}

#[derive(Debug, Clone, Default)]
pub struct Lshade {
    pub config: LshadeConfig,
}

impl Optimizer for Lshade {
    fn name(&self) -> &str {
        "lshade"
    }

    fn min_budget(&self, problem: &Problem, _max_evals: usize) -> usize {
        self.config.initial_size(problem.dim())
    }

    fn run(&self, problem: &Problem, max_evals: usize, every: usize, rng: &mut RngState) -> Result<RunTrace> {
        run_lshade(problem, max_evals, &self.config, every, rng)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Jso {
    pub config: JsoConfig,
}

impl Optimizer for Jso {
    fn name(&self) -> &str {
        "jso"
    }

    fn min_budget(&self, problem: &Problem, _max_evals: usize) -> usize {
        self.config.initial_size(problem.dim())
    }

    fn run(&self, problem: &Problem, max_evals: usize, every: usize, rng: &mut RngState) -> Result<RunTrace> {
        run_jso(problem, max_evals, &self.config, every, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seed_rng;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn sphere(dim: usize) -> Problem {
        Problem::new(
            "sphere",
            vec![-100.0; dim],
            vec![100.0; dim],
            0.0,
            Arc::new(|x: &[f64]| x.iter().map(|v| v * v).sum()),
        )
        .unwrap()
    }

    #[test]
    fn terminal_slot_samples_zero_cr() {
        let mut mem = SuccessHistory::new(1, 0.5, 0.5, false).unwrap();
        mem.m_cr[0] = None;
        let mut rng = seed_rng(0);
        for _ in 0..100 {
            assert_eq!(sample_parameters(&mem, &mut rng, 0.9, false).1, 0.0);
        }
    }

    #[test]
    fn jso_clamps() {
        assert_eq!(jso_clamp(0.9, 0.2, 0.1), (0.7, 0.7));
        assert_eq!(jso_clamp(0.9, 0.2, 0.3), (0.7, 0.6));
        assert_eq!(jso_clamp(0.9, 0.2, 0.9), (0.9, 0.2));
        // with tau = 0.9 the jSO sampler reproduces the plain one draw for draw
        let mem = SuccessHistory::new(4, 0.5, 0.5, true).unwrap();
        let (mut a, mut b) = (seed_rng(3), seed_rng(3));
        for _ in 0..200 {
            assert_eq!(
                sample_parameters(&mem, &mut a, 0.9, true),
                sample_parameters(&mem, &mut b, 0.9, false)
            );
        }
    }

    #[test]
    fn sampled_parameters_in_range() {
        let mem = SuccessHistory::new(6, 0.5, 0.5, false).unwrap();
        let mut rng = seed_rng(11);
        for _ in 0..10_000 {
            let (f, cr) = sample_parameters(&mem, &mut rng, 0.0, false);
            assert!(f > 0.0 && f <= 1.0);
            assert!((0.0..=1.0).contains(&cr));
        }
    }

    #[test]
    fn schedules() {
        assert_eq!(fw_schedule(0.0), 0.7);
        assert_eq!(fw_schedule(0.3), 0.8);
        assert_eq!(fw_schedule(1.0), 1.2);
        assert_eq!(pbest_schedule(0.0, 0.25, 0.125), 0.25);
        assert_eq!(pbest_schedule(1.0, 0.25, 0.125), 0.125);
        assert_eq!(pbest_schedule(0.5, 0.25, 0.125), 0.1875);
    }

    #[test]
    fn memory_update_cases() {
        let mem = SuccessHistory::new(3, 0.5, 0.5, false).unwrap();
        assert_eq!(update_memory(&mem, &GenerationLog::default()), mem);

        let mut log = GenerationLog::default();
        log.push(0.2, 0.5, 1.0);
        log.push(0.8, 0.5, 1.0);
        let next = update_memory(&mem, &log);
        let oracle = (0.2f64.powi(2) + 0.8f64.powi(2)) / (0.2 + 0.8);
        assert!((next.m_f()[0] - oracle).abs() < 1e-15);
        assert!((next.m_f()[0] - 0.68).abs() < 1e-12);
        assert_eq!(next.write_index(), 1);

        let mut single = GenerationLog::default();
        single.push(0.5, 0.3, 2.0);
        let next = update_memory(&mem, &single);
        assert!((next.m_f()[0] - 0.5).abs() < 1e-15);
        assert!((next.m_cr()[0].unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn terminal_marker_is_sticky() {
        let mut mem = SuccessHistory::new(1, 0.5, 0.5, false).unwrap();
        let mut zero = GenerationLog::default();
        zero.push(0.5, 0.0, 1.0);
        mem.update(&zero);
        assert_eq!(mem.m_cr()[0], None);
        let mut good = GenerationLog::default();
        good.push(0.5, 0.9, 1.0);
        mem.update(&good);
        assert_eq!(mem.m_cr()[0], None);
    }

    #[test]
    fn locked_slot_never_written() {
        let mut mem = SuccessHistory::new(3, 0.3, 0.8, true).unwrap();
        let mut log = GenerationLog::default();
        log.push(0.1, 0.1, 1.0);
        for _ in 0..10 {
            mem.update(&log);
            assert!(mem.write_index() < 2);
        }
        assert_eq!(mem.m_f()[2], 0.9);
        assert_eq!(mem.m_cr()[2], Some(0.9));
    }

    #[test]
    fn lpsr_cases() {
        assert_eq!(lpsr_size(100, 4, 0, 1000), 100);
        assert_eq!(lpsr_size(100, 4, 1000, 1000), 4);
        assert_eq!(lpsr_size(100, 4, 500, 1000), 52);
        // ceiling of the real-valued interpolation
        for nfe in (0..=997).step_by(7) {
            let real = (4.0 - 100.0) / 997.0 * nfe as f64 + 100.0;
            let got = lpsr_size(100, 4, nfe, 997);
            assert!((got as f64 - real.ceil()).abs() <= 1.0 && got as f64 >= real - 1e-9);
        }
    }

    #[test]
    fn shrink_cases() {
        let mut rng = seed_rng(0);
        let mut pop = Population::new(vec![
            Individual::evaluated(vec![0.0], 1.0),
            Individual::evaluated(vec![1.0], 2.0),
            Individual::evaluated(vec![2.0], 3.0),
        ]);
        let mut archive = Archive::with_capacity(10);
        shrink_population(&mut pop, &mut archive, 3, 1.0, &mut rng).unwrap();
        assert_eq!(pop.len(), 3);
        shrink_population(&mut pop, &mut archive, 2, 1.0, &mut rng).unwrap();
        assert_eq!(pop.fitnesses(), vec![1.0, 2.0]);
        assert!(shrink_population(&mut pop, &mut archive, 0, 1.0, &mut rng).is_err());

        let mut pop: Population = Population::new(
            (0..10).map(|k| Individual::evaluated(vec![k as f64], k as f64)).collect(),
        );
        let mut archive = Archive::with_capacity(10);
        for k in 0..10 {
            archive.push(vec![k as f64], &mut rng);
        }
        shrink_population(&mut pop, &mut archive, 5, 1.0, &mut rng).unwrap();
        assert!(archive.len() <= 5);
    }

    #[test]
    fn lshade_solves_sphere_10d() {
        let t = run_lshade(&sphere(10), 100_000, &LshadeConfig::default(), 100, &mut seed_rng(1)).unwrap();
        assert!(t.best_value < 1e-8, "{}", t.best_value);
        assert!(t.evaluations <= 100_000);
    }

    #[test]
    fn jso_solves_sphere_10d() {
        let t = run_jso(&sphere(10), 100_000, &JsoConfig::default(), 100, &mut seed_rng(1)).unwrap();
        assert!(t.best_value < 1e-8, "{}", t.best_value);
    }

    #[test]
    fn budget_equal_to_population() {
        let cfg = LshadeConfig::default();
        let n = cfg.initial_size(5);
        let t = run_lshade(&sphere(5), n, &cfg, 100, &mut seed_rng(2)).unwrap();
        assert_eq!(t.evaluations, n);
        assert!(t.population_sizes.is_empty());
        assert!(run_lshade(&sphere(5), n - 1, &cfg, 100, &mut seed_rng(2)).is_err());
    }

    #[test]
    fn same_seed_same_trace() {
        let cfg = JsoConfig::default();
        let a = run_jso(&sphere(5), 5_000, &cfg, 50, &mut seed_rng(9)).unwrap();
        let b = run_jso(&sphere(5), 5_000, &cfg, 50, &mut seed_rng(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn size_trace_follows_lpsr() {
        let cfg = LshadeConfig::default();
        let max = 7_000;
        let t = run_lshade(&sphere(4), max, &cfg, 100, &mut seed_rng(4)).unwrap();
        let n0 = cfg.initial_size(4);
        assert!(!t.population_sizes.is_empty());
        for &(nfe, n) in &t.population_sizes {
            assert_eq!(n, lpsr_size(n0, 4, nfe, max));
        }
        assert!(t.checkpoints.windows(2).all(|w| w[1].best <= w[0].best));
    }

    proptest! {
        #[test]
        fn memory_stays_valid(
            seed in 0u64..500,
            logs in proptest::collection::vec(
                proptest::collection::vec((0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..10.0), 0..6), 1..20),
            lock in any::<bool>(),
        ) {
            let mut mem = SuccessHistory::new(4, 0.5, 0.5, lock).unwrap();
            let mut rng = seed_rng(seed);
            for entries in logs {
                let mut log = GenerationLog::default();
                for (_, cr, d) in entries {
                    let (f, _) = sample_parameters(&mem, &mut rng, 0.5, lock);
                    log.push(f.max(1e-3), cr, d);
                }
                mem.update(&log);
                prop_assert!(mem.m_f().iter().all(|f| *f > 0.0 && *f <= 1.0));
                prop_assert!(mem.m_cr().iter().flatten().all(|c| (0.0..=1.0).contains(c)));
                if lock {
                    prop_assert_eq!(mem.m_f()[3], 0.9);
                    prop_assert_eq!(mem.m_cr()[3], Some(0.9));
                }
            }
        }
    }
}
