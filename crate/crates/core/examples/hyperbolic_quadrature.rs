//! Primal integral scaling for a hyperbolic barrier: the exact Gaussian rule
//! for the weight `1 / p^2` against Gauss-Legendre with its error bound.

use conic_metrics::cones::{Barrier, HyperbolicBarrier};
use conic_metrics::linalg::{local_operator_norm, Vector};
use conic_metrics::polynomial::Polynomial;
use conic_metrics::quadrature::{build_custom_rule, hessian_integral_exact, primal_scaling_legendre};

fn main() -> conic_metrics::Result<()> {
    let p = Polynomial::elementary_symmetric(4, 3)?;
    let x = Vector::from_vec(vec![1.0, 1.5, 0.7, 1.2]);
    let delta = Vector::from_vec(vec![0.2, -0.3, 0.25, 0.1]);
    let rule = build_custom_rule(&p, &x, &delta, 3)?;
    println!("custom rule nodes   {:?}", rule.nodes);
    println!("custom rule weights {:?}", rule.weights);

    let exact = hessian_integral_exact(&p, &x, &delta)?;
    let hx = HyperbolicBarrier::new(p.clone(), x.clone())?.hessian(&x)?;
    println!("{:>3} {:>12} {:>12}", "k", "error", "bound");
    for k in 1..=6 {
        let gl = primal_scaling_legendre(&p, &x, &delta, 1.0, k)?;
        let err = local_operator_norm(&(&gl.hessian_integral - &exact), &hx)?;
        println!("{k:>3} {err:>12.3e} {:>12.3e}", gl.error_bound);
    }
    Ok(())
}
