mod common;

use common::*;
use conic_metrics::cones::psd::svec;
use conic_metrics::cones::BlockSpec;
use conic_metrics::generate::random_problem;
use conic_metrics::ipm::{
    build_shadow, build_step_metric, neighbourhood_measure, predictor_alpha, predictor_step,
    solve, solve_newton_system, ConicProblem, SolveOptions, SolveStatus, UpdateForm,
    NARROW_NEIGHBOURHOOD,
};
use conic_metrics::linalg::{Matrix, Vector};
use conic_metrics::Error;

fn v(xs: &[f64]) -> Vector {
    Vector::from_vec(xs.to_vec())
}

/// `min x1 + 2 x2 + 3 x3` s.t. `x1 + x2 + x3 = 3`, `x >= 0`; optimum 3 at `(3, 0, 0)`.
fn small_lp() -> (ConicProblem, Vector, Vector, Vector) {
    let problem = ConicProblem::new(
        Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]),
        v(&[3.0]),
        v(&[1.0, 2.0, 3.0]),
        vec![BlockSpec::Orthant { dim: 3 }],
    )
    .unwrap();
    (problem, v(&[1.0, 1.0, 1.0]), v(&[0.0]), v(&[1.0, 2.0, 3.0]))
}

fn assert_gap_identity(problem: &ConicProblem, x: &[f64], y: &[f64], s: &[f64]) {
    let (x, y, s) = (v(x), v(y), v(s));
    let identity = problem.c.dot(&x) - problem.b.dot(&y) - x.dot(&s);
    assert!(identity.abs() < 1e-9 * (1.0 + problem.c.dot(&x).abs()), "{identity:e}");
}

#[test]
fn small_lp_reaches_known_optimum() {
    let (problem, x, y, s) = small_lp();
    let report = solve(&problem, &x, &y, &s, &SolveOptions::default()).unwrap();
    assert_eq!(report.status, SolveStatus::Converged);
    assert!(report.gap <= 1e-8 * problem.theta());
    assert!((report.primal_objective - 3.0).abs() < 1e-7);
    assert!((report.dual_objective - 3.0).abs() < 1e-7);
    assert_gap_identity(&problem, &report.x, &report.y, &report.s);
    assert!(report.max_halving_iterations() as f64 <= report.halving_bound);
}

#[test]
fn socp_norm_minimisation() {
    // min t s.t. (t, u, v) in the second-order cone, u = 3, v = 4
    let problem = ConicProblem::new(
        Matrix::from_row_slice(2, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
        v(&[3.0, 4.0]),
        v(&[1.0, 0.0, 0.0]),
        vec![BlockSpec::Soc { dim: 3 }],
    )
    .unwrap();
    let report = solve(&problem, &v(&[6.0, 3.0, 4.0]), &v(&[0.0, 0.0]), &v(&[1.0, 0.0, 0.0]), &SolveOptions::default())
        .unwrap();
    assert!((report.primal_objective - 5.0).abs() < 1e-7);
    assert!((report.dual_objective - 5.0).abs() < 1e-7);
}

#[test]
fn sdp_minimum_eigenvalue() {
    // min <C, X> s.t. trace X = 1 gives the smallest eigenvalue of C, here 1
    let c = svec(&Matrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]));
    let trace = svec(&Matrix::identity(2, 2));
    let problem = ConicProblem::new(
        Matrix::from_row_slice(1, 3, trace.as_slice()),
        v(&[1.0]),
        c.clone(),
        vec![BlockSpec::Psd { side: 2 }],
    )
    .unwrap();
    let x = svec(&(Matrix::identity(2, 2) * 0.5));
    let report = solve(&problem, &x, &v(&[0.0]), &c, &SolveOptions::default()).unwrap();
    assert!((report.primal_objective - 1.0).abs() < 1e-7);
}

#[test]
fn update_forms_and_adaptive_steps_agree() {
    let file = random_problem(vec![BlockSpec::Orthant { dim: 8 }, BlockSpec::Soc { dim: 4 }], 5, &mut rng(41)).unwrap();
    let problem = file.problem().unwrap();
    let (x, y, s) = file.start_vectors(&problem).unwrap();
    let base = solve(&problem, &x, &y, &s, &SolveOptions::default()).unwrap();
    let bfgs = solve(&problem, &x, &y, &s, &SolveOptions { update: UpdateForm::Bfgs, ..Default::default() }).unwrap();
    let adaptive = solve(&problem, &x, &y, &s, &SolveOptions { adaptive: true, ..Default::default() }).unwrap();
    assert_eq!(base.iterations, bfgs.iterations);
    assert!(adaptive.iterations < base.iterations);
    for r in [&bfgs, &adaptive] {
        assert!((r.primal_objective - base.primal_objective).abs() < 1e-6 * (1.0 + base.primal_objective.abs()));
    }
}

#[test]
fn optimal_start_takes_no_iterations() {
    let problem = ConicProblem::new(
        Matrix::from_row_slice(1, 2, &[1.0, 1.0]),
        v(&[2.0]),
        v(&[1e-10, 1e-10]),
        vec![BlockSpec::Orthant { dim: 2 }],
    )
    .unwrap();
    let report = solve(&problem, &v(&[1.0, 1.0]), &v(&[0.0]), &v(&[1e-10, 1e-10]), &SolveOptions::default()).unwrap();
    assert_eq!(report.iterations, 0);
    assert_eq!(report.start_iterations, 0);
}

#[test]
fn newton_directions_are_orthogonal_in_scaled_space() {
    let file = random_problem(vec![BlockSpec::Psd { side: 3 }, BlockSpec::Orthant { dim: 3 }], 4, &mut rng(42)).unwrap();
    let problem = file.problem().unwrap();
    let (x, y, s) = file.start_vectors(&problem).unwrap();
    let state = build_shadow(&problem, &x, &y, &s).unwrap();
    let (metric, cert) = build_step_metric(&problem, &state).unwrap();
    assert!(cert.in_t2);
    for gamma in [0.0, 0.5, 1.0] {
        let dir = solve_newton_system(&problem, &state, &metric, gamma).unwrap();
        assert!(dir.scaled_inner.abs() <= 1e-8, "{}", dir.scaled_inner);
        assert!((&problem.a * state.unscale_primal(&dir.dx)).norm() < 1e-9);
    }
}

#[test]
fn predictor_reduces_gap_by_one_minus_alpha() {
    let file = random_problem(vec![BlockSpec::Soc { dim: 3 }, BlockSpec::Soc { dim: 3 }], 2, &mut rng(43)).unwrap();
    let problem = file.problem().unwrap();
    let (x, y, s) = file.start_vectors(&problem).unwrap();
    let state = build_shadow(&problem, &x, &y, &s).unwrap();
    assert!(neighbourhood_measure(&state) <= NARROW_NEIGHBOURHOOD);
    let alpha = predictor_alpha(problem.theta());
    assert!((alpha - 0.023732).abs() < 1e-6);
    let next = predictor_step(&problem, &state).unwrap();
    assert!((next.gap() / state.gap() - (1.0 - alpha)).abs() < 1e-10);
}

#[test]
fn invalid_starts_are_rejected() {
    let (problem, x, y, s) = small_lp();
    assert!(matches!(build_shadow(&problem, &v(&[1.0, 1.0, 2.0]), &y, &s), Err(Error::Invalid(_))));
    assert!(build_shadow(&problem, &v(&[4.0, -1.0, 0.0]), &y, &s).is_err());
    assert!(matches!(build_shadow(&problem, &x, &y, &v(&[1.0, 2.0])), Err(Error::DimensionMismatch { .. })));
    let rank_deficient = ConicProblem::new(
        Matrix::from_row_slice(2, 3, &[1.0, 1.0, 1.0, 2.0, 2.0, 2.0]),
        v(&[3.0, 6.0]),
        v(&[1.0, 2.0, 3.0]),
        vec![BlockSpec::Orthant { dim: 3 }],
    );
    assert!(matches!(rank_deficient, Err(Error::Invalid(_))));
}
