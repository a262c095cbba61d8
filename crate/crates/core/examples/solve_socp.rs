//! Solves a small second-order cone program with a traced run that records
//! the certified metric quality at every step.

use conic_metrics::cones::BlockSpec;
use conic_metrics::ipm::{solve, ConicProblem, SolveOptions, StepKind};
use conic_metrics::linalg::{Matrix, Vector};

fn main() -> conic_metrics::Result<()> {
    // min t s.t. (t, u, v) in the second-order cone, u = 3, v = 4
    let problem = ConicProblem::new(
        Matrix::from_row_slice(2, 3, &[0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
        Vector::from_vec(vec![3.0, 4.0]),
        Vector::from_vec(vec![1.0, 0.0, 0.0]),
        vec![BlockSpec::Soc { dim: 3 }],
    )?;
    let x = Vector::from_vec(vec![6.0, 3.0, 4.0]);
    let y = Vector::zeros(2);
    let s = Vector::from_vec(vec![1.0, 0.0, 0.0]);
    let report = solve(&problem, &x, &y, &s, &SolveOptions { trace: true, ..Default::default() })?;
    println!("optimal t = {:.10}", report.primal_objective);
    println!("start iterations {}, iterations {}", report.start_iterations, report.iterations);
    let worst_xi = report
        .trace
        .iter()
        .filter(|r| r.kind != StepKind::Start)
        .filter_map(|r| r.xi)
        .fold(1.0, f64::max);
    println!("largest certified xi over the run {worst_xi:.6}");
    for r in report.trace.iter().step_by(50) {
        println!("  {:>5} {:?} mu = {:.3e} |delta_D|_s = {:.5}", r.iteration, r.kind, r.mu, r.neighbourhood);
    }
    Ok(())
}
