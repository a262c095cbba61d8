//! Quadrature rules on `[0, 1]` and numerical Hessian line integrals.

mod custom;
mod hyperbolic;

pub use custom::{build_custom_rule, rule_from_weight};
pub use hyperbolic::{
    hessian_integral_exact, hessian_integral_legendre, primal_scaling_exact,
    primal_scaling_legendre, LegendreScaling,
};
pub(crate) use hyperbolic::hyperbolic_hessian_integral;

use std::sync::OnceLock;

use crate::cones::{require_segment, Barrier};
use crate::error::{Error, Result};
use crate::linalg::{eigen, Matrix, Vector};

#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    Legendre,
    /// `1 / p(base - t * delta)^2`
    InversePSquared { base: Vector, delta: Vector },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_function: WeightFunction,
    pub order: usize,
}

impl QuadratureRule {
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }
}

/// Nodes and weights from a Jacobi matrix with diagonal `alpha` and squared
/// off-diagonal `beta[1..]`; `beta[0]` is the total mass of the weight.
pub(crate) fn golub_welsch(alpha: &[f64], beta: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = alpha.len();
    let mut j = Matrix::zeros(n, n);
    for k in 0..n {
        j[(k, k)] = alpha[k];
        if k + 1 < n {
            if !(beta[k + 1] > 0.0) {
                return Err(Error::IllConditioned(format!(
                    "recurrence coefficient beta_{} = {:e} is not positive",
                    k + 1,
                    beta[k + 1]
                )));
            }
            let b = beta[k + 1].sqrt();
            j[(k, k + 1)] = b;
            j[(k + 1, k)] = b;
        }
    }
    let eig = eigen(&j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], beta[0] * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

/// Monic shifted Legendre recurrence on `[0, 1]`: `a_k = 1/2`, `b_k = k^2 / (4 (4k^2 - 1))`.
pub(crate) fn legendre_recurrence(k: usize) -> (f64, f64) {
    let kf = k as f64;
    let b = if k == 0 {
        1.0
    } else {
        kf * kf / (4.0 * (4.0 * kf * kf - 1.0))
    };
    (0.5, b)
}

/// The `k`-point Gauss-Legendre rule on `[0, 1]`.
pub fn gauss_legendre(k: usize) -> QuadratureRule {
    assert!(k >= 1, "rule needs at least one node");
    let (alpha, beta): (Vec<f64>, Vec<f64>) = (0..k).map(legendre_recurrence).unzip();
    let (nodes, weights) = golub_welsch(&alpha, &beta).expect("Legendre recurrence is positive");
    QuadratureRule {
        nodes,
        weights,
        weight_function: WeightFunction::Legendre,
        order: k,
    }
}

const PANEL_ORDER: usize = 16;

fn panel_rule() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// How [`Barrier::hessian_line_integral`] integrates when no closed form exists.
#[derive(Debug, Clone, PartialEq)]
pub enum LineRule {
    /// Composite 16-point Gauss-Legendre with the panel count doubled until
    /// the relative Frobenius change falls below `rel_tol`.
    Adaptive { rel_tol: f64, max_panels: usize },
    Fixed(QuadratureRule),
}

impl Default for LineRule {
    fn default() -> Self {
        LineRule::Adaptive {
            rel_tol: 1e-10,
            max_panels: 256,
        }
    }
}

fn composite<T, F>(panels: usize, mut f: F, zero: T) -> Result<T>
where
    T: std::ops::AddAssign + std::ops::Mul<f64, Output = T>,
    F: FnMut(f64) -> Result<T>,
{
    let rule = panel_rule();
    let width = 1.0 / panels as f64;
    let mut acc = zero;
    for p in 0..panels {
        let left = p as f64 * width;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            acc += f(left + t * width)? * (w * width);
        }
    }
    Ok(acc)
}

/// `int_0^1 F''(base - t direction) dt` by numerical quadrature.
pub fn adaptive_hessian_integral<B: Barrier + ?Sized>(
    b: &B,
    base: &Vector,
    direction: &Vector,
    rule: &LineRule,
) -> Result<Matrix> {
    require_segment(b, base, direction)?;
    let n = b.dim();
    let integrand = |t: f64| b.hessian(&(base - direction * t));
    match rule {
        LineRule::Fixed(q) => {
            let mut acc = Matrix::zeros(n, n);
            for (&t, &w) in q.nodes.iter().zip(&q.weights) {
                acc += integrand(t)? * w;
            }
            Ok(acc)
        }
        LineRule::Adaptive {
            rel_tol,
            max_panels,
        } => {
            let mut panels = 1;
            let mut prev = composite(panels, integrand, Matrix::zeros(n, n))?;
            loop {
                panels *= 2;
                let next = composite(panels, integrand, Matrix::zeros(n, n))?;
                let change = (&next - &prev).norm();
                if change <= rel_tol * next.norm() {
                    return Ok(next);
                }
                if panels >= *max_panels {
                    return Err(Error::NonConvergence {
                        iterations: panels,
                        residual: change / next.norm(),
                    });
                }
                prev = next;
            }
        }
    }
}

/// Scalar version of the adaptive composite rule, used for moments.
pub(crate) fn adaptive_integral<F: FnMut(f64) -> f64>(
    mut f: F,
    rel_tol: f64,
    max_panels: usize,
) -> Result<f64> {
    let mut panels = 1;
    let mut prev = composite(panels, |t| Ok(f(t)), 0.0)?;
    loop {
        panels *= 2;
        let next = composite(panels, |t| Ok(f(t)), 0.0)?;
        if (next - prev).abs() <= rel_tol * next.abs() {
            return Ok(next);
        }
        if panels >= max_panels {
            return Err(Error::NonConvergence {
                iterations: panels,
                residual: (next - prev).abs() / next.abs(),
            });
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = gauss_legendre(5);
        for deg in 0..10 {
            let got = rule.integrate(|t| t.powi(deg));
            assert!((got - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "degree {deg}");
        }
        assert!(rule.nodes.iter().all(|&t| t > 0.0 && t < 1.0));
        assert!(rule.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn one_point_rule_is_midpoint() {
        let rule = gauss_legendre(1);
        assert!((rule.nodes[0] - 0.5).abs() < 1e-15);
        assert!((rule.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_scalar_integral() {
        let got = adaptive_integral(|t| 1.0 / (1.0 + t), 1e-14, 1024).unwrap();
        assert!((got - 2f64.ln()).abs() < 1e-14);
    }
}
