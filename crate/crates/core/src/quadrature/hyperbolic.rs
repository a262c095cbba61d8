//! Primal integral scaling for `-ln p` by Gaussian quadrature.
//!
//! On the segment `x - t delta`, `p^2 F''` has polynomial entries of degree at
//! most `2 deg p - 2`, so the `deg p`-node Gaussian rule for the weight
//! `1 / p^2` integrates `F''` exactly.

use super::{build_custom_rule, gauss_legendre};
use crate::cones::{Barrier, HyperbolicBarrier};
use crate::error::{Error, Result};
use crate::linalg::{local_operator_norm, quad_form, spd_inverse, Matrix, Vector};
use crate::metrics::{LocalMetric, Provenance};
use crate::polynomial::Polynomial;

/// `p'(y) p'(y)^T - p(y) p''(y)`
fn hessian_numerator(p: &Polynomial, y: &Vector) -> Matrix {
    let g = p.gradient(y);
    &g * g.transpose() - p.hessian(y) * p.eval(y)
}

fn hessian(p: &Polynomial, y: &Vector) -> Matrix {
    let v = p.eval(y);
    hessian_numerator(p, y) / (v * v)
}

/// `int_0^1 F''(x - t delta) dt` for `F = -ln p`, exact up to moment accuracy.
pub fn hessian_integral_exact(p: &Polynomial, x: &Vector, delta: &Vector) -> Result<Matrix> {
    let order = p.degree() as usize;
    let rule = build_custom_rule(p, x, delta, order)?;
    let n = p.nvars();
    let mut acc = Matrix::zeros(n, n);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += hessian_numerator(p, &(x - delta * t)) * w;
    }
    Ok(acc)
}

pub(crate) fn hyperbolic_hessian_integral(
    barrier: &HyperbolicBarrier,
    base: &Vector,
    direction: &Vector,
) -> Result<Matrix> {
    hessian_integral_exact(barrier.polynomial(), base, direction)
}

/// `T_P^2 = (mu int_0^1 F''(x - t delta_P) dt)^-1`.
pub fn primal_scaling_exact(
    p: &Polynomial,
    x: &Vector,
    delta_p: &Vector,
    mu: f64,
) -> Result<LocalMetric> {
    let integral = hessian_integral_exact(p, x, delta_p)?;
    LocalMetric::new(spd_inverse(&(integral * mu))?, Provenance::PrimalIntegral)
}

/// `sum_i w_i F''(x - r_i delta)` over the `k`-point Gauss-Legendre rule.
pub fn hessian_integral_legendre(p: &Polynomial, x: &Vector, delta: &Vector, k: usize) -> Matrix {
    let rule = gauss_legendre(k);
    let n = p.nvars();
    let mut acc = Matrix::zeros(n, n);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += hessian(p, &(x - delta * t)) * w;
    }
    acc
}

#[derive(Debug, Clone)]
pub struct LegendreScaling {
    pub metric: LocalMetric,
    /// The Gauss-Legendre approximation of `int_0^1 F''(x - t delta) dt`.
    pub hessian_integral: Matrix,
    /// Bound on the error of `hessian_integral` in the operator norm at `x`.
    pub error_bound: f64,
}

/// Sample points for the maximum in the error bound: a uniform 33-point grid
/// with two extra points near each end.
fn bound_grid() -> Vec<f64> {
    let mut ts: Vec<f64> = (0..=32).map(|i| i as f64 / 32.0).collect();
    ts.extend([1.0 / 128.0, 1.0 / 64.0, 1.0 - 1.0 / 64.0, 1.0 - 1.0 / 128.0]);
    ts
}

/// `k`-node Gauss-Legendre primal scaling with the computable error bound
/// `(1 - |delta|_x)^-2 max_t 2 |delta|_{x - t delta}^{2k} |F''(x - t delta)|_x^{k/2}`.
pub fn primal_scaling_legendre(
    p: &Polynomial,
    x: &Vector,
    delta_p: &Vector,
    mu: f64,
    k: usize,
) -> Result<LegendreScaling> {
    if k == 0 {
        return Err(Error::Invalid("Gauss-Legendre order must be positive".into()));
    }
    let barrier = HyperbolicBarrier::new(p.clone(), x.clone())?;
    let hx = barrier.hessian(x)?;
    let len = quad_form(&hx, delta_p).max(0.0).sqrt();
    if len >= 1.0 {
        return Err(Error::Precondition(format!(
            "|delta_P|_x = {len} is not below 1"
        )));
    }
    let mut worst: f64 = 0.0;
    if len > 0.0 {
        for t in bound_grid() {
            let y = x - delta_p * t;
            let hy = hessian(p, &y);
            let local = quad_form(&hy, delta_p).max(0.0).sqrt();
            let op = local_operator_norm(&hy, &hx)?;
            worst = worst.max(2.0 * local.powi(2 * k as i32) * op.powf(k as f64 / 2.0));
        }
    }
    let error_bound = worst / (1.0 - len).powi(2);
    let hessian_integral = hessian_integral_legendre(p, x, delta_p, k);
    let metric = LocalMetric::new(
        spd_inverse(&(&hessian_integral * mu))?,
        Provenance::PrimalIntegral,
    )?;
    Ok(LegendreScaling {
        metric,
        hessian_integral,
        error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_vec(xs.to_vec())
    }

    #[test]
    fn product_polynomial_gives_lp_scaling() {
        // x = (1,1), s = (2,1): mu = 1.5, x~ = (1/2, 1), delta_P = x - mu x~ = (0.25, -0.5)
        let p = Polynomial::coordinate_product(2);
        let x = v(&[1.0, 1.0]);
        let delta = v(&[0.25, -0.5]);
        let m = primal_scaling_exact(&p, &x, &delta, 1.5).unwrap();
        assert!((m.t2 - Matrix::from_diagonal(&v(&[0.5, 1.0]))).norm() < 1e-10);
    }

    #[test]
    fn zero_direction_is_inverse_hessian() {
        let p = Polynomial::lorentz(3);
        let x = v(&[2.0, 0.5, -0.3]);
        let m = primal_scaling_exact(&p, &x, &Vector::zeros(3), 2.0).unwrap();
        let expected = spd_inverse(&(hessian(&p, &x) * 2.0)).unwrap();
        assert!((m.t2 - &expected).norm() < 1e-10 * expected.norm());
        let gl = primal_scaling_legendre(&p, &x, &Vector::zeros(3), 2.0, 3).unwrap();
        assert_eq!(gl.error_bound, 0.0);
    }

    #[test]
    fn legendre_needs_short_direction() {
        let p = Polynomial::coordinate_product(2);
        let r = primal_scaling_legendre(&p, &v(&[1.0, 1.0]), &v(&[1.5, 0.0]), 1.0, 2);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
