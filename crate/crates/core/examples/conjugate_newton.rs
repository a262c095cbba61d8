//! Evaluates the conjugate of a hyperbolic barrier by Newton's method and
//! shows the quadratic convergence inside the basin.

use conic_metrics::cones::{Barrier, HyperbolicBarrier};
use conic_metrics::conjugate::{conjugate_newton, local_convergence_probe, CONTRACTION_BOUND};
use conic_metrics::linalg::Vector;
use conic_metrics::polynomial::Polynomial;

fn main() -> conic_metrics::Result<()> {
    let p = Polynomial::elementary_symmetric(4, 3)?;
    let barrier = HyperbolicBarrier::new(p, Vector::repeat(4, 1.0))?;
    let star = Vector::from_vec(vec![1.0, 2.0, 0.5, 1.5]);
    let s = -barrier.gradient(&star)?;

    let result = conjugate_newton(&barrier, &s, &Vector::repeat(4, 1.0), 1e-12, 100)?;
    println!("from the unit point: {} iterations, residual {:.2e}", result.iterations, result.residual_norm);
    println!("xhat  = {:.10}", result.xhat.transpose());
    println!("F*(s) = {:.12} (expected {:.12})", result.value, -barrier.theta() - barrier.value(&star)?);

    let x0 = &star + Vector::from_vec(vec![0.05, -0.1, 0.02, 0.08]);
    let probe = local_convergence_probe(&barrier, &s, &x0)?;
    println!("local probe, s-norm contraction bound {CONTRACTION_BOUND:.4}");
    for (k, (a, b)) in probe.xhat_norms.iter().zip(&probe.s_norms).enumerate() {
        println!("  step {k}: |r|*_xhat = {a:.3e}  |r|_s = {b:.3e}");
    }
    println!("max contraction {:.4}, max quadratic factor {:.4}", probe.max_contraction, probe.max_quadratic_factor);
    Ok(())
}
