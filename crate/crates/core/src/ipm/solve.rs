use serde::{Deserialize, Serialize};

use super::{
    build_shadow, centering_inner, damped_centering, neighbourhood_measure, predictor_inner,
    ConicProblem, IterateState, StepInfo, HALVING_CONSTANT, NARROW_NEIGHBOURHOOD,
    WIDE_NEIGHBOURHOOD,
};
use crate::error::{Error, Result};
use crate::linalg::Vector;

/// Which rank-two correction of the midpoint metric the solver uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateForm {
    #[default]
    TwoStep,
    Bfgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// Damped centering toward the wide neighbourhood.
    Start,
    Centering,
    Predictor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub kind: StepKind,
    /// `mu` after the step.
    pub mu: f64,
    /// `|delta_D|_s` before the step.
    pub neighbourhood: f64,
    /// `gamma_G` before the step.
    pub gamma_g: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub xi: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Stop once `<x, s> <= eps theta`.
    pub eps: f64,
    /// Record one [`TraceRecord`] per step, including the metric certificate.
    pub trace: bool,
    /// Bisect for the longest predictor step that stays in the wide neighbourhood.
    pub adaptive: bool,
    pub update: UpdateForm,
    pub max_iterations: usize,
    pub max_start_iterations: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            eps: 1e-8,
            trace: false,
            adaptive: false,
            update: UpdateForm::TwoStep,
            max_iterations: 200_000,
            max_start_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged,
    IterationLimit,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Centering and predictor steps, excluding the start phase.
    pub iterations: usize,
    pub start_iterations: usize,
    pub centering_steps: usize,
    pub predictor_steps: usize,
    pub primal_objective: f64,
    pub dual_objective: f64,
    pub gap: f64,
    pub mu: f64,
    pub theta: f64,
    /// Steps spent on each successive halving of the gap after the start phase.
    pub halving_iterations: Vec<usize>,
    /// `42 sqrt(theta)`
    pub halving_bound: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub s: Vec<f64>,
    pub trace: Vec<TraceRecord>,
}

impl SolveReport {
    pub fn max_halving_iterations(&self) -> usize {
        self.halving_iterations.iter().copied().max().unwrap_or(0)
    }
}

struct Run<'a> {
    problem: &'a ConicProblem,
    options: &'a SolveOptions,
    trace: Vec<TraceRecord>,
    steps: usize,
}

impl Run<'_> {
    fn record(&mut self, kind: StepKind, before: &IterateState, after: &IterateState, info: &StepInfo) {
        self.steps += 1;
        if self.options.trace {
            self.trace.push(TraceRecord {
                iteration: self.steps,
                kind,
                mu: after.mu(),
                neighbourhood: info.neighbourhood,
                gamma_g: before.geometry.pair.gamma_g,
                gamma: info.gamma,
                alpha: info.alpha,
                xi: info.xi,
            });
        }
    }

    fn done(&self, state: &IterateState) -> bool {
        state.gap() <= self.options.eps * self.problem.theta()
    }
}

/// Predictor-corrector iterations from a strictly feasible `(x, y, s)` until
/// `<x, s> <= eps theta`.
pub fn solve(
    problem: &ConicProblem,
    x: &Vector,
    y: &Vector,
    s: &Vector,
    options: &SolveOptions,
) -> Result<SolveReport> {
    if !(options.eps > 0.0) {
        return Err(Error::Invalid(format!("eps must be positive, got {}", options.eps)));
    }
    let mut state = build_shadow(problem, x, y, s)?;
    let mut run = Run {
        problem,
        options,
        trace: Vec::new(),
        steps: 0,
    };

    let mut start_iterations = 0;
    while !run.done(&state) && neighbourhood_measure(&state) > WIDE_NEIGHBOURHOOD {
        if start_iterations == options.max_start_iterations {
            return Err(Error::NonConvergence {
                iterations: start_iterations,
                residual: neighbourhood_measure(&state),
            });
        }
        let (next, info) = damped_centering(problem, &state, options.update)?;
        run.record(StepKind::Start, &state, &next, &info);
        state = next;
        start_iterations += 1;
    }

    let certify = options.trace;
    let mut halving_iterations = Vec::new();
    let mut halving_target = state.gap() / 2.0;
    let mut since_halving = 0;
    let (mut centering_steps, mut predictor_steps) = (0, 0);
    let mut status = SolveStatus::Converged;
    while !run.done(&state) {
        if run.steps - start_iterations >= options.max_iterations {
            status = SolveStatus::IterationLimit;
            break;
        }
        let (next, info, kind) = if neighbourhood_measure(&state) > NARROW_NEIGHBOURHOOD {
            centering_steps += 1;
            let (n, i) = centering_inner(problem, &state, options.update, certify)?;
            (n, i, StepKind::Centering)
        } else {
            predictor_steps += 1;
            let (n, i) = predictor_inner(problem, &state, options.update, certify, options.adaptive)?;
            (n, i, StepKind::Predictor)
        };
        run.record(kind, &state, &next, &info);
        state = next;
        since_halving += 1;
        while state.gap() <= halving_target {
            halving_iterations.push(since_halving);
            since_halving = 0;
            halving_target /= 2.0;
        }
    }

    let theta = problem.theta();
    Ok(SolveReport {
        status,
        iterations: run.steps - start_iterations,
        start_iterations,
        centering_steps,
        predictor_steps,
        primal_objective: problem.c.dot(&state.x),
        dual_objective: problem.b.dot(&state.y),
        gap: state.gap(),
        mu: state.mu(),
        theta,
        halving_iterations,
        halving_bound: HALVING_CONSTANT * theta.sqrt(),
        x: state.x.iter().copied().collect(),
        y: state.y.iter().copied().collect(),
        s: state.s.iter().copied().collect(),
        trace: run.trace,
    })
}
