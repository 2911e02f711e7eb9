//! The annealing run loop.
//!
//! Each iteration proposes moving one uniformly chosen vertex to the other
//! shore. A move whose gain is nonnegative is always taken; a worsening move
//! with gain `delta < 0` is taken with probability `exp(heat * delta / best)`,
//! where `best` is the best cut value seen so far and `heat` (the inverse
//! temperature) grows linearly from 0 by a fixed step every iteration. While
//! `best <= 0` every move is taken.

use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicBool, Ordering};

use rand_core::RngCore;

use crate::cutstate::CutState;
use crate::graph::{CutAssignment, Graph};
use crate::rng::{uniform_below, unit_f64};

/// Iterations between checks of the wall clock and the cancellation flag.
const CHECK_STRIDE: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScheduleError {
    NonPositiveHeatMax(f64),
    NonPositiveHeatStep(f64),
    TooManyIterations(f64),
}

impl fmt::Display for ScheduleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonPositiveHeatMax(x) => write!(f, "heat max must be positive and finite, got {x}"),
            Self::NonPositiveHeatStep(x) => write!(f, "heat step must be positive and finite, got {x}"),
            Self::TooManyIterations(x) => write!(f, "schedule implies {x} iterations, more than a u64 holds"),
        }
    }
}

impl core::error::Error for ScheduleError {}

/// Linear inverse-temperature ramp: iteration `i` runs at heat `i * heat_step`
/// for as long as that stays below `heat_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSchedule {
    heat_max: f64,
    heat_step: f64,
}

impl LinearSchedule {
    pub const DEFAULT_HEAT_MAX: f64 = 10_000.0;
    pub const DEFAULT_HEAT_STEP: f64 = 2e-6;

    pub fn new(heat_max: f64, heat_step: f64) -> Result<Self, ScheduleError> {
        if !(heat_max > 0.0 && heat_max.is_finite()) {
            return Err(ScheduleError::NonPositiveHeatMax(heat_max));
        }
        if !(heat_step > 0.0 && heat_step.is_finite()) {
            return Err(ScheduleError::NonPositiveHeatStep(heat_step));
        }
        let ratio = heat_max / heat_step;
        if ratio >= u64::MAX as f64 {
            return Err(ScheduleError::TooManyIterations(ratio));
        }
        Ok(Self { heat_max, heat_step })
    }

    pub fn heat_max(&self) -> f64 {
        self.heat_max
    }

    pub fn heat_step(&self) -> f64 {
        self.heat_step
    }

    #[inline]
    pub fn heat_at(&self, iteration: u64) -> f64 {
        iteration as f64 * self.heat_step
    }

    pub fn iteration_count(&self) -> u64 {
        iteration_count(self)
    }
}

impl Default for LinearSchedule {
    fn default() -> Self {
        Self { heat_max: Self::DEFAULT_HEAT_MAX, heat_step: Self::DEFAULT_HEAT_STEP }
    }
}

/// `ceil(heat_max / heat_step)`, where a quotient within a relative 1e-9 of an
/// integer counts as that integer (2e-6 has no exact binary representation).
pub fn iteration_count(schedule: &LinearSchedule) -> u64 {
    let q = schedule.heat_max / schedule.heat_step;
    let nearest = libm::round(q);
    let count = if libm::fabs(q - nearest) <= 1e-9 * nearest.max(1.0) { nearest } else { libm::ceil(q) };
    (count as u64).max(1)
}

/// Probability of accepting a move with gain `delta` at inverse temperature
/// `heat` when the best cut so far has value `best`.
#[inline]
pub fn acceptance_probability(heat: f64, delta: i64, best: i64) -> f64 {
    if best <= 0 || delta >= 0 {
        1.0
    } else {
        libm::exp(heat * delta as f64 / best as f64).min(1.0)
    }
}

/// `u < acceptance_probability(heat, delta, best)` for `delta < 0 < best` and `u`
/// a multiple of 2^-53 in `[0, 1)`, evaluating `exp` only when cheap bounds
/// cannot decide.
///
/// With `y = -heat * delta / best >= 0`: `exp(-y) >= 1 - y`, and
/// `exp(-y) <= 1 / (1 + y + y^2/2 + y^3/6)`. Both tests keep a 1e-12 relative
/// margin, far wider than the rounding error of either side. Past `EXP_FLOOR`
/// the probability is below 2^-53, so only `u == 0` can pass.
#[inline]
fn accept_worsening(heat: f64, delta: i64, best: i64, u: f64) -> bool {
    const EXP_FLOOR: f64 = 37.0;
    const MARGIN: f64 = 1e-12;
    let x = heat * delta as f64 / best as f64;
    let y = -x;
    if y > EXP_FLOOR {
        return u == 0.0 && libm::exp(x) > 0.0;
    }
    if u < (1.0 - y) * (1.0 - MARGIN) {
        return true;
    }
    let series = 1.0 + y * (1.0 + y * (0.5 + y * (1.0 / 6.0)));
    if u * series >= 1.0 + MARGIN {
        return false;
    }
    u < libm::exp(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnealParams {
    pub schedule: LinearSchedule,
    pub seed: u64,
    /// Forward each improvement to the observer passed to [`Annealer::on_improvement`].
    pub report_improvements: bool,
    /// Wall-clock budget in seconds; requires a [`Clock`].
    pub time_limit: Option<f64>,
}

impl AnnealParams {
    pub fn new(schedule: LinearSchedule, seed: u64) -> Self {
        Self { schedule, seed, report_improvements: false, time_limit: None }
    }
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self::new(LinearSchedule::default(), 0)
    }
}

/// Source of elapsed wall time for budgets and reporting.
pub trait Clock {
    fn elapsed_secs(&self) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Improvement {
    pub iteration: u64,
    pub objective: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The schedule ran to `heat_max`.
    Completed,
    TimeLimit,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_objective: i64,
    pub best_assignment: CutAssignment,
    pub iterations_executed: u64,
    pub accepted_moves: u64,
    /// Strictly increasing in objective.
    pub improvement_trace: Vec<Improvement>,
    /// Seconds reported by the clock at the end of the run; 0 without a clock.
    pub wall_time: f64,
    pub stop_reason: StopReason,
}

impl RunResult {
    pub fn completed(&self) -> bool {
        self.stop_reason == StopReason::Completed
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnnealError {
    EmptyGraph,
    InvalidTimeLimit(f64),
    /// A time limit was requested but no clock was supplied.
    MissingClock,
}

impl fmt::Display for AnnealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyGraph => f.write_str("cannot anneal a graph with no vertices"),
            Self::InvalidTimeLimit(t) => write!(f, "time limit must be positive, got {t}"),
            Self::MissingClock => f.write_str("a time limit needs a clock"),
        }
    }
}

impl core::error::Error for AnnealError {}

/// One annealing run with optional clock, cancellation flag and improvement observer.
pub struct Annealer<'a> {
    graph: &'a Graph,
    params: &'a AnnealParams,
    clock: Option<&'a dyn Clock>,
    cancel: Option<&'a AtomicBool>,
    observer: Option<&'a mut dyn FnMut(Improvement)>,
}

impl<'a> Annealer<'a> {
    pub fn new(graph: &'a Graph, params: &'a AnnealParams) -> Self {
        Self { graph, params, clock: None, cancel: None, observer: None }
    }

    pub fn clock(mut self, clock: &'a dyn Clock) -> Self {
        self.clock = Some(clock);
        self
    }

    /// The run stops at the next check once `flag` is set.
    pub fn cancel_flag(mut self, flag: &'a AtomicBool) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn on_improvement(mut self, observer: &'a mut dyn FnMut(Improvement)) -> Self {
        self.observer = Some(observer);
        self
    }

    fn check_stop(&self) -> Option<StopReason> {
        if self.cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return Some(StopReason::Cancelled);
        }
        match (self.params.time_limit, self.clock) {
            (Some(limit), Some(clock)) if clock.elapsed_secs() >= limit => Some(StopReason::TimeLimit),
            _ => None,
        }
    }

    pub fn run<R: RngCore + ?Sized>(mut self, rng: &mut R) -> Result<RunResult, AnnealError> {
        let graph = self.graph;
        let n = graph.num_vertices();
        if n == 0 {
            return Err(AnnealError::EmptyGraph);
        }
        if let Some(limit) = self.params.time_limit {
            if limit.is_nan() || limit <= 0.0 {
                return Err(AnnealError::InvalidTimeLimit(limit));
            }
            if self.clock.is_none() {
                return Err(AnnealError::MissingClock);
            }
        }
        let n = n as u32;
        let schedule = self.params.schedule;
        let total = schedule.iteration_count();
        let report = self.params.report_improvements;

        let mut state = CutState::init_all_one(graph);
        let mut best = state.objective();
        let mut best_assignment = state.assignment().clone();
        let mut trace = Vec::new();
        let mut accepted = 0u64;
        let mut stop_reason = StopReason::Completed;

        let mut i = 0u64;
        while i < total {
            if let Some(reason) = self.check_stop() {
                stop_reason = reason;
                break;
            }
            let end = total.min(i + CHECK_STRIDE);
            for it in i..end {
                let k = uniform_below(rng, n) as usize;
                let gain = state.gain(k);
                if gain < 0 && best > 0 && !accept_worsening(schedule.heat_at(it), gain, best, unit_f64(rng)) {
                    continue;
                }
                state.flip(k);
                accepted += 1;
                if state.objective() > best {
                    best = state.objective();
                    best_assignment.clone_from(state.assignment());
                    let event = Improvement { iteration: it, objective: best };
                    trace.push(event);
                    if report {
                        if let Some(obs) = self.observer.as_mut() {
                            obs(event);
                        }
                    }
                }
            }
            i = end;
        }

        Ok(RunResult {
            best_objective: best,
            best_assignment,
            iterations_executed: i,
            accepted_moves: accepted,
            improvement_trace: trace,
            wall_time: self.clock.map_or(0.0, |c| c.elapsed_secs()),
            stop_reason,
        })
    }
}

/// Runs the schedule to completion with no clock or observer.
pub fn anneal<R: RngCore + ?Sized>(
    graph: &Graph,
    params: &AnnealParams,
    rng: &mut R,
) -> Result<RunResult, AnnealError> {
    Annealer::new(graph, params).run(rng)
}
