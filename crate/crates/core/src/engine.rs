//! Adaptive restart/refine differential evolution.
//!
//! The generation step is the jSO one from [`crate::shade`]. On top of it
//! the engine sizes its first population from the budget, shrinks the
//! population on a dimension-dependent power schedule and, whenever the
//! population has converged, either restarts away from the regions already
//! explored or refines by resampling earlier populations.

use serde::{Deserialize, Serialize};

use crate::de::{evaluate_all, Archive, Individual, Population};
use crate::error::{arg, Error, Result};
use crate::problems::Problem;
use crate::rng::{latin_hypercube, RngState};
use crate::shade::{
    archive_capacity, fw_schedule, pbest_schedule, shade_generation, shrink_population, StepParams, SuccessHistory,
};
use crate::trace::{BudgetedEvaluator, Event, EventKind, RunTrace};
use crate::Optimizer;

/// Smallest population the generation step accepts comfortably.
const MIN_POP: usize = 4;
/// Progress from which one refinement is mandatory.
const REFINE_POINT: f64 = 0.9;
const REFINE_DECAY: f64 = 0.01;

/// Budget-aware initial population size.
pub fn initial_population_size(dim: usize, max_evals: usize) -> Result<usize> {
    if dim == 0 || max_evals == 0 {
        return arg("dimension and budget must be positive");
    }
    if max_evals < dim {
        return arg(format!("budget {max_evals} is below the dimension {dim}"));
    }
    let eta = (max_evals as f64 / dim as f64).log10().max(2.0);
    let mult = (2.0 + 5.756 * (eta - 2.0).powf(1.609)).max(2.0);
    Ok(((dim as f64 * mult).ceil() as usize).max(MIN_POP))
}

/// Exponent of the population reduction schedule.
pub fn reduction_exponent(dim: usize) -> f64 {
    1.17 + 2.075 * (-0.0567 * dim as f64).exp()
}

fn size_floor(dim: usize) -> usize {
    dim.div_ceil(2).max(MIN_POP)
}

/// Population size the schedule asks for at progress `t`.
pub fn target_population_size(t: f64, n0: usize, dim: usize) -> usize {
    let t = t.clamp(0.0, 1.0);
    let n0 = n0 as f64;
    let half = dim as f64 / 2.0;
    let n = if t <= REFINE_POINT {
        let r = reduction_exponent(dim);
        n0 - (n0 - half) * (1.0 - ((REFINE_POINT - t) / REFINE_POINT).powf(r))
    } else {
        let q = n0 / 4.0;
        q - (q - half) * (1.0 - ((1.0 - t) / (1.0 - REFINE_POINT)).powi(2))
    };
    (n.round().max(0.0) as usize).max(size_floor(dim))
}

/// Relative spread `std / |mean|` of the fitness values, with the
/// denominator guarded away from zero.
pub fn convergence_indicator(fitnesses: &[f64]) -> Result<f64> {
    if fitnesses.len() < 2 {
        return arg("convergence indicator needs at least two values");
    }
    let n = fitnesses.len() as f64;
    let mean = fitnesses.iter().sum::<f64>() / n;
    let var = fitnesses.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    Ok(std / mean.abs().max(1e-12 * (1.0 + std)))
}

/// Allowed number of consecutive restarts at progress `t`.
pub fn max_restarts(t: f64) -> f64 {
    2.0 + 3.0 * t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    FirstCycle,
    PostRestart,
    PostRefine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleAction {
    Restart,
    Refine,
}

/// A converged population stored at a trigger.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub memory: SuccessHistory,
}

/// Per-dimension sorted, disjoint closed intervals barred to restarts.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExclusionSet {
    intervals: Vec<Vec<(f64, f64)>>,
}

impl ExclusionSet {
    pub fn new(dim: usize) -> Self {
        Self {
            intervals: vec![Vec::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self, d: usize) -> &[(f64, f64)] {
        &self.intervals[d]
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.iter().all(Vec::is_empty)
    }

    /// Unions `[lo, hi]` into dimension `d`.
    pub fn merge(&mut self, d: usize, lo: f64, hi: f64) {
        let list = &mut self.intervals[d];
        list.push((lo.min(hi), lo.max(hi)));
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(list.len());
        for &(a, b) in list.iter() {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        *list = merged;
    }

    pub fn excludes(&self, d: usize, x: f64) -> bool {
        self.intervals[d].iter().any(|&(a, b)| a <= x && x <= b)
    }
}

/// Per-dimension `[max(mu - sigma, L), min(mu + sigma, U)]` over every
/// individual of every snapshot.
pub fn exclusion_intervals(positions: &[&[Vec<f64>]], lower: &[f64], upper: &[f64]) -> Vec<(f64, f64)> {
    let mut acc = vec![Moments::default(); lower.len()];
    for pop in positions {
        for x in pop.iter() {
            for (m, v) in acc.iter_mut().zip(x) {
                m.push(*v);
            }
        }
    }
    acc.iter()
        .enumerate()
        .map(|(d, m)| m.interval(lower[d], upper[d]))
        .collect()
}

/// Merges the interval computed from `archived` into a copy of `existing`.
pub fn update_exclusion(
    existing: &ExclusionSet,
    archived: &[Snapshot],
    lower: &[f64],
    upper: &[f64],
) -> Result<ExclusionSet> {
    if archived.is_empty() {
        return Err(Error::State("exclusion update needs an archived population".into()));
    }
    let pops: Vec<&[Vec<f64>]> = archived.iter().map(|s| s.positions.as_slice()).collect();
    let mut out = existing.clone();
    for (d, (a, b)) in exclusion_intervals(&pops, lower, upper).into_iter().enumerate() {
        out.merge(d, a, b);
    }
    Ok(out)
}

/// Running mean and population variance (Welford).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn interval(&self, lo: f64, hi: f64) -> (f64, f64) {
        let sigma = if self.n > 0.0 { (self.m2 / self.n).max(0.0).sqrt() } else { 0.0 };
        let a = (self.mean - sigma).max(lo).min(hi);
        let b = (self.mean + sigma).min(hi).max(lo);
        (a, b)
    }
}

/// Uniform draw from `[lower, upper]` minus the union of `intervals`, which
/// must be sorted and disjoint. Returns `None` when nothing is left.
pub fn sample_outside_exclusion(rng: &mut RngState, lower: f64, upper: f64, intervals: &[(f64, f64)]) -> Option<f64> {
    if intervals.is_empty() {
        return Some(rng.uniform_in(lower, upper));
    }
    // gaps carry whether each end touches an excluded interval
    let mut gaps: Vec<(f64, f64, bool, bool)> = Vec::with_capacity(intervals.len() + 1);
    let mut start = lower;
    let mut start_open = false;
    for &(a, b) in intervals {
        if a > start {
            gaps.push((start, a.min(upper), start_open, true));
        }
        if b >= start {
            start = b;
            start_open = true;
        }
        if start >= upper {
            break;
        }
    }
    if start < upper {
        gaps.push((start, upper, start_open, false));
    }
    let total: f64 = gaps.iter().map(|g| g.1 - g.0).sum();
    if gaps.is_empty() || total <= 0.0 {
        return None;
    }
    let mut u = rng.uniform() * total;
    let last = gaps.len() - 1;
    for (k, &(a, b, a_open, b_open)) in gaps.iter().enumerate() {
        let len = b - a;
        if u < len || k == last {
            let mut x = (a + u).min(b);
            if a_open && x <= a {
                x = a.next_up();
            }
            if b_open && x >= b {
                x = b.next_down();
            }
            return Some(x.clamp(lower, upper));
        }
        u -= len;
    }
    unreachable!("fell through the gap list")
}

/// Restart/refine bookkeeping of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrdeState {
    pub phase: Phase,
    pub refine_flag: bool,
    pub consecutive_restarts: usize,
    pub improved_since_cycle: bool,
    pub restart_archives: Vec<Snapshot>,
    pub exclusion: ExclusionSet,
    pub s_tol: f64,
    /// Threshold in force after a refinement; shrinks at every refinement.
    pub refine_tol: f64,
    moments: Vec<Moments>,
}

impl ArrdeState {
    pub fn new(dim: usize, s_tol: f64) -> Self {
        Self {
            phase: Phase::FirstCycle,
            refine_flag: false,
            consecutive_restarts: 0,
            improved_since_cycle: false,
            restart_archives: Vec::new(),
            exclusion: ExclusionSet::new(dim),
            s_tol,
            refine_tol: s_tol,
            moments: vec![Moments::default(); dim],
        }
    }

    /// Indicator threshold for the current cycle.
    pub fn active_tolerance(&self) -> f64 {
        if self.phase == Phase::PostRefine {
            self.refine_tol
        } else {
            self.s_tol
        }
    }

    fn archived_count(&self) -> usize {
        self.restart_archives.iter().map(|s| s.positions.len()).sum()
    }

    /// Merges the interval over all archived individuals into the
    /// persisted exclusion set.
    pub fn refresh_exclusion(&mut self, lower: &[f64], upper: &[f64]) {
        for d in 0..self.exclusion.dim() {
            let (a, b) = self.moments[d].interval(lower[d], upper[d]);
            self.exclusion.merge(d, a, b);
        }
    }
}

/// Chooses what to do at a trigger.
pub fn decide_phase(state: &ArrdeState, t: f64) -> CycleAction {
    if state.refine_flag {
        return CycleAction::Refine;
    }
    let wants_restart =
        state.phase == Phase::FirstCycle || state.phase == Phase::PostRefine || !state.improved_since_cycle;
    let allowed = (state.consecutive_restarts as f64) < max_restarts(t).floor();
    if wants_restart && allowed {
        CycleAction::Restart
    } else {
        CycleAction::Refine
    }
}

/// Stores deep copies of the population, its fitness and the memory.
pub fn snapshot_to_archives(state: &mut ArrdeState, pop: &Population, mem: &SuccessHistory) {
    let positions: Vec<Vec<f64>> = pop.members.iter().map(|m| m.position.clone()).collect();
    for x in &positions {
        for (m, v) in state.moments.iter_mut().zip(x) {
            m.push(*v);
        }
    }
    state.restart_archives.push(Snapshot {
        fitness: pop.fitnesses(),
        positions,
        memory: mem.clone(),
    });
}

/// Fresh population with every coordinate drawn outside the exclusion set.
/// Coordinates whose range is fully excluded are drawn uniformly and
/// reported through `events`.
pub fn restart_population(
    state: &mut ArrdeState,
    rng: &mut RngState,
    size: usize,
    ev: &mut BudgetedEvaluator<'_>,
    events: &mut Vec<Event>,
) -> Population {
    let lower = ev.problem().lower().to_vec();
    let upper = ev.problem().upper().to_vec();
    let mut fell_back = vec![false; lower.len()];
    let points: Vec<Vec<f64>> = (0..size)
        .map(|_| {
            (0..lower.len())
                .map(|d| {
                    sample_outside_exclusion(rng, lower[d], upper[d], state.exclusion.intervals(d)).unwrap_or_else(
                        || {
                            fell_back[d] = true;
                            rng.uniform_in(lower[d], upper[d])
                        },
                    )
                })
                .collect()
        })
        .collect();
    for (d, _) in fell_back.iter().enumerate().filter(|(_, f)| **f) {
        events.push(Event {
            evals: ev.count(),
            progress: ev.progress(),
            kind: EventKind::ExclusionFallback { dim: d },
        });
    }
    let pop = evaluate_all(points, ev);
    state.consecutive_restarts += 1;
    state.improved_since_cycle = false;
    state.phase = Phase::PostRestart;
    pop
}

/// Population resampled from the pooled archived individuals, reusing their
/// stored fitness. With the refine flag set, `best` replaces the worst
/// sampled member.
pub fn refine_population(
    state: &mut ArrdeState,
    rng: &mut RngState,
    size: usize,
    best: Option<(&[f64], f64)>,
) -> Result<Population> {
    let pool = state.archived_count();
    if pool == 0 {
        return Err(Error::State("refinement needs a non-empty restart archive".into()));
    }
    if size == 0 {
        return arg("refinement size must be positive");
    }
    let picks: Vec<usize> = if pool >= size {
        rand::seq::index::sample(rng.inner(), pool, size).into_vec()
    } else {
        (0..size).map(|_| rng.index(pool)).collect()
    };
    let mut offsets = Vec::with_capacity(state.restart_archives.len());
    let mut acc = 0;
    for s in &state.restart_archives {
        offsets.push(acc);
        acc += s.positions.len();
    }
    let mut members: Vec<Individual> = picks
        .into_iter()
        .map(|k| {
            let s = offsets.partition_point(|&o| o <= k) - 1;
            let snap = &state.restart_archives[s];
            let j = k - offsets[s];
            Individual::evaluated(snap.positions[j].clone(), snap.fitness[j])
        })
        .collect();
    if state.refine_flag {
        if let Some((x, f)) = best {
            let mut pop = Population::new(members);
            let worst = *pop.ranked().last().expect("non-empty");
            pop.members[worst] = Individual::evaluated(x.to_vec(), f);
            members = pop.members;
        }
    }
    state.consecutive_restarts = 0;
    state.improved_since_cycle = false;
    state.phase = Phase::PostRefine;
    Ok(Population::new(members))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrdeConfig {
    /// Overrides the budget-based initial size.
    pub pop_size: Option<usize>,
    /// Restart/refine threshold on `std(f) / |mean(f)|`.
    pub s_tol: f64,
    /// Factor applied to the refinement threshold at every refinement.
    pub refine_decay: f64,
    /// Adaptive memory slots, not counting the locked one.
    pub memory_size: usize,
    pub archive_ratio: f64,
    pub p_init: f64,
    pub p_final: f64,
    pub f_init: f64,
    pub cr_init: f64,
}

impl Default for ArrdeConfig {
    fn default() -> Self {
        Self {
            pop_size: None,
            s_tol: 1e-8,
            refine_decay: REFINE_DECAY,
            memory_size: 6,
            archive_ratio: 2.6,
            p_init: 0.25,
            p_final: 0.125,
            f_init: 0.5,
            cr_init: 0.5,
        }
    }
}

impl ArrdeConfig {
    pub fn initial_size(&self, dim: usize, max_evals: usize) -> Result<usize> {
        match self.pop_size {
            Some(n) => Ok(n.max(MIN_POP)),
            None => initial_population_size(dim, max_evals),
        }
    }

    fn validate(&self) -> Result<()> {
        let in_unit = |p: f64| p > 0.0 && p <= 1.0;
        if !in_unit(self.p_init) || !in_unit(self.p_final) {
            return arg("p-best schedule must lie in (0, 1]");
        }
        if !(self.s_tol >= 0.0) {
            return arg(format!("s_tol must be non-negative, got {}", self.s_tol));
        }
        if !(self.refine_decay > 0.0 && self.refine_decay <= 1.0) {
            return arg(format!("refine_decay must lie in (0, 1], got {}", self.refine_decay));
        }
        if self.memory_size == 0 {
            return arg("memory_size must be positive");
        }
        Ok(())
    }
}

pub fn run_arrde(
    problem: &Problem,
    max_evals: usize,
    config: &ArrdeConfig,
    checkpoint_every: usize,
    rng: &mut RngState,
) -> Result<RunTrace> {
    config.validate()?;
    let dim = problem.dim();
    let n0 = config.initial_size(dim, max_evals)?;
    if max_evals < n0 {
        return arg(format!("budget {max_evals} is smaller than the initial population ({n0})"));
    }
    let mut ev = BudgetedEvaluator::new(problem, max_evals, checkpoint_every);
    let start = latin_hypercube(rng, n0, problem.lower(), problem.upper())?;
    let mut pop = evaluate_all(start, &mut ev);
    let mut mem = SuccessHistory::new(config.memory_size + 1, config.f_init, config.cr_init, true)?;
    let mut archive = Archive::with_capacity(archive_capacity(config.archive_ratio, n0));
    let mut state = ArrdeState::new(dim, config.s_tol);
    let mut cycle_best = ev.best_value();
    let mut sizes = Vec::new();
    let mut events = Vec::new();

    while !ev.exhausted() {
        let t = ev.progress();
        let target = target_population_size(t, n0, dim);
        if pop.len() > target {
            shrink_population(&mut pop, &mut archive, target, config.archive_ratio, rng)?;
        }
        sizes.push((ev.count(), pop.len()));
        let step = StepParams {
            tau: t,
            p: pbest_schedule(t, config.p_init, config.p_final),
            f_w: fw_schedule(t),
            jso_mode: true,
        };
        shade_generation(&mut pop, &mut archive, &mut mem, step, &mut ev, rng)?;
        if ev.exhausted() {
            break;
        }
        if ev.best_value() < cycle_best {
            state.improved_since_cycle = true;
        }

        let s = convergence_indicator(&pop.fitnesses())?;
        let t = ev.progress();
        let mandated = !state.refine_flag && t >= REFINE_POINT;
        if mandated {
            state.refine_flag = true;
        }
        if !(s <= state.active_tolerance() || mandated) || ev.remaining() < MIN_POP {
            continue;
        }
        events.push(Event {
            evals: ev.count(),
            progress: t,
            kind: EventKind::Trigger { indicator: s, mandated },
        });
        snapshot_to_archives(&mut state, &pop, &mem);
        state.refresh_exclusion(problem.lower(), problem.upper());
        let size = target_population_size(t, n0, dim);
        match decide_phase(&state, t) {
            CycleAction::Restart => {
                let size = size.min(ev.remaining());
                events.push(Event {
                    evals: ev.count(),
                    progress: t,
                    kind: EventKind::Restart { size },
                });
                pop = restart_population(&mut state, rng, size, &mut ev, &mut events);
                archive = Archive::with_capacity(archive_capacity(config.archive_ratio, pop.len()));
            }
            CycleAction::Refine => {
                let inserted = state.refine_flag;
                let best = (ev.best_position().to_vec(), ev.best_value());
                pop = refine_population(&mut state, rng, size, Some((&best.0, best.1)))?;
                state.refine_tol *= config.refine_decay;
                archive.resize(archive_capacity(config.archive_ratio, pop.len()), rng);
                events.push(Event {
                    evals: ev.count(),
                    progress: t,
                    kind: EventKind::Refine {
                        size,
                        inserted_best: inserted,
                    },
                });
            }
        }
        cycle_best = ev.best_value();
    }
    Ok(ev.finish(sizes, events))
}

#[derive(Debug, Clone, Default)]
pub struct Arrde {
    pub config: ArrdeConfig,
}

impl Optimizer for Arrde {
    fn name(&self) -> &str {
        "arrde"
    }

    fn min_budget(&self, problem: &Problem, max_evals: usize) -> usize {
        self.config
            .initial_size(problem.dim(), max_evals.max(problem.dim()))
            .unwrap_or(MIN_POP)
    }

    fn run(&self, problem: &Problem, max_evals: usize, every: usize, rng: &mut RngState) -> Result<RunTrace> {
        run_arrde(problem, max_evals, &self.config, every, rng)
    }
}
