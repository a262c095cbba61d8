//! Solves a random linear program from a central start and prints the
//! per-halving iteration counts against the bound.

use conic_metrics::generate::{generate, ProblemKind};
use conic_metrics::ipm::{solve, SolveOptions};

fn main() -> conic_metrics::Result<()> {
    let file = generate(ProblemKind::Lp, 3)?;
    let problem = file.problem()?;
    let (x, y, s) = file.start_vectors(&problem)?;
    for adaptive in [false, true] {
        let report = solve(&problem, &x, &y, &s, &SolveOptions { adaptive, ..Default::default() })?;
        println!("adaptive = {adaptive}");
        println!("  status     {:?}", report.status);
        println!("  objective  {:.10} / {:.10}", report.primal_objective, report.dual_objective);
        println!("  iterations {} ({} centering, {} predictor)", report.iterations, report.centering_steps, report.predictor_steps);
        println!("  per halving {:?} (bound {:.1})", report.halving_iterations, report.halving_bound);
    }
    Ok(())
}
