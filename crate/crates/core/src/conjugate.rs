//! Conjugate barrier values, gradients and Hessians from primal oracle calls.
//!
//! `F*(s) = sup { -<s, x> - F(x) }` is attained at the `x` with `F'(x) = -s`;
//! Newton's method on that equation needs only `F'` and `F''`.

use std::sync::Arc;

use crate::cones::Barrier;
use crate::error::{Error, Result};
use crate::linalg::{cholesky, spd_inverse, Matrix, Vector};

pub const DEFAULT_EPS: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100;

/// Local quadratic convergence sets in once the residual is at most this.
pub const QUADRATIC_BASIN: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateResult {
    /// Approximates `-F*'(s)`.
    pub xhat: Vector,
    /// Approximates `F*(s)`.
    pub value: f64,
    /// `|F'(xhat) + s|*_xhat`
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

struct NewtonStep {
    residual: Vector,
    step: Vector,
    decrement: f64,
}

fn newton_step<B: Barrier + ?Sized>(oracle: &B, s: &Vector, x: &Vector) -> Result<NewtonStep> {
    let residual = oracle.gradient(x)? + s;
    let h = oracle.hessian(x)?;
    let chol = cholesky(&h).map_err(|e| Error::NumericalBreakdown(format!("Newton system: {e}")))?;
    let step = -chol.solve(&residual);
    let decrement = (-residual.dot(&step)).max(0.0).sqrt();
    Ok(NewtonStep {
        residual,
        step,
        decrement,
    })
}

/// Newton's method for `F'(x) = -s` started at `x0`.
///
/// Steps are damped by `1 / (1 + |r|*)` while the residual exceeds 1/4,
/// which keeps every iterate interior.
pub fn conjugate_newton<B: Barrier + ?Sized>(
    oracle: &B,
    s: &Vector,
    x0: &Vector,
    eps: f64,
    max_iter: usize,
) -> Result<ConjugateResult> {
    if s.len() != oracle.dim() {
        return Err(Error::DimensionMismatch {
            expected: oracle.dim(),
            got: s.len(),
        });
    }
    if !oracle.is_interior(x0) {
        return Err(Error::Domain("starting point is not interior".into()));
    }
    let mut x = x0.clone();
    let mut iterations = 0;
    loop {
        let n = newton_step(oracle, s, &x)?;
        if n.decrement < eps {
            return Ok(ConjugateResult {
                value: -s.dot(&x) - oracle.value(&x)?,
                xhat: x,
                residual_norm: n.decrement,
                iterations,
                converged: true,
            });
        }
        if iterations >= max_iter {
            return Err(Error::NonConvergence {
                iterations,
                residual: n.decrement,
            });
        }
        let scale = if n.decrement > QUADRATIC_BASIN {
            1.0 / (1.0 + n.decrement)
        } else {
            1.0
        };
        let next = &x + &n.step * scale;
        if !oracle.is_interior(&next) {
            return Err(Error::NumericalBreakdown(format!(
                "Newton iterate left the cone at residual {:e}",
                n.decrement
            )));
        }
        x = next;
        iterations += 1;
    }
}

/// `(F*'(s), F*''(s)) = (-xhat, F''(xhat)^-1)` from a converged result.
pub fn conjugate_gradient_hessian<B: Barrier + ?Sized>(
    oracle: &B,
    result: &ConjugateResult,
) -> Result<(Vector, Matrix)> {
    if !result.converged {
        return Err(Error::Precondition(
            "conjugate Newton result has not converged".into(),
        ));
    }
    Ok((-&result.xhat, spd_inverse(&oracle.hessian(&result.xhat)?)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceProbe {
    /// `|r_k|*_{xhat_k}` per iterate, starting with the initial residual.
    pub xhat_norms: Vec<f64>,
    /// `|r_k|_s`, the same residuals measured at `s`.
    pub s_norms: Vec<f64>,
    /// Largest `s_norms[k+1] / s_norms[k]` over steps above the rounding floor.
    pub max_contraction: f64,
    /// Largest `s_norms[k+1] / (xhat_norms[k] s_norms[k])` over the same steps.
    pub max_quadratic_factor: f64,
    pub contraction_ok: bool,
    pub quadratic_ok: bool,
}

/// Per-step s-norm contraction guaranteed inside the quadratic basin.
pub const CONTRACTION_BOUND: f64 = 64.0 / 81.0;
/// Quadratic-rate factor guaranteed inside the quadratic basin.
pub const QUADRATIC_FACTOR: f64 = 3.2;

const PROBE_FLOOR: f64 = 1e-13;
const PROBE_MAX_STEPS: usize = 20;

/// Runs undamped Newton from a start inside the quadratic basin and records
/// the residual in both the moving `xhat`-norm and the fixed `s`-norm.
pub fn local_convergence_probe<B: Barrier + ?Sized>(
    oracle: &B,
    s: &Vector,
    x0: &Vector,
) -> Result<ConvergenceProbe> {
    let first = newton_step(oracle, s, x0)?;
    if first.decrement > QUADRATIC_BASIN {
        return Err(Error::Precondition(format!(
            "initial residual {} exceeds 1/4",
            first.decrement
        )));
    }
    // F*''(s) = F''(x*)^-1, so |r|_s^2 = r^T F''(x*)^-1 r
    let exact = conjugate_newton(oracle, s, x0, 1e-14, DEFAULT_MAX_ITER).or_else(|_| {
        conjugate_newton(oracle, s, x0, 1e-12, DEFAULT_MAX_ITER)
    })?;
    let star = cholesky(&oracle.hessian(&exact.xhat)?)?;
    let s_norm = |r: &Vector| r.dot(&star.solve(r)).max(0.0).sqrt();

    let mut x = x0.clone();
    let mut step = first;
    let mut xhat_norms = vec![step.decrement];
    let mut s_norms = vec![s_norm(&step.residual)];
    while step.decrement > PROBE_FLOOR && xhat_norms.len() <= PROBE_MAX_STEPS {
        x += &step.step;
        if !oracle.is_interior(&x) {
            return Err(Error::NumericalBreakdown("undamped Newton left the cone".into()));
        }
        step = newton_step(oracle, s, &x)?;
        xhat_norms.push(step.decrement);
        s_norms.push(s_norm(&step.residual));
    }

    let mut max_contraction: f64 = 0.0;
    let mut max_quadratic_factor: f64 = 0.0;
    for k in 0..s_norms.len().saturating_sub(1) {
        if s_norms[k] <= PROBE_FLOOR || s_norms[k + 1] <= PROBE_FLOOR {
            continue;
        }
        max_contraction = max_contraction.max(s_norms[k + 1] / s_norms[k]);
        max_quadratic_factor =
            max_quadratic_factor.max(s_norms[k + 1] / (xhat_norms[k] * s_norms[k]));
    }
    Ok(ConvergenceProbe {
        contraction_ok: max_contraction <= CONTRACTION_BOUND,
        quadratic_ok: max_quadratic_factor <= QUADRATIC_FACTOR,
        xhat_norms,
        s_norms,
        max_contraction,
        max_quadratic_factor,
    })
}

/// The conjugate of a primal barrier, evaluated by Newton's method at every call.
///
/// Each evaluation starts from `theta * e / <s, e>` for a fixed interior
/// anchor `e`, so results depend only on `s`.
#[derive(Debug, Clone)]
pub struct ConjugateBarrier {
    primal: Arc<dyn Barrier>,
    anchor: Vector,
}

const INNER_EPS: f64 = 1e-12;
const INNER_MAX_ITER: usize = 500;

impl ConjugateBarrier {
    pub fn new(primal: Arc<dyn Barrier>, anchor: Vector) -> Result<Self> {
        if !primal.is_interior(&anchor) {
            return Err(Error::Invalid("conjugate anchor must be interior".into()));
        }
        Ok(Self { primal, anchor })
    }

    /// Solves for `-F*'(s)`, with one extra full Newton step after convergence.
    pub fn solve(&self, s: &Vector) -> Result<ConjugateResult> {
        if s.len() != self.anchor.len() {
            return Err(Error::DimensionMismatch {
                expected: self.anchor.len(),
                got: s.len(),
            });
        }
        let pairing = s.dot(&self.anchor);
        if !(pairing > 0.0) || s.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("dual point is not interior".into()));
        }
        let x0 = &self.anchor * (self.primal.theta() / pairing);
        let mut result =
            conjugate_newton(self.primal.as_ref(), s, &x0, INNER_EPS, INNER_MAX_ITER).map_err(
                |e| match e {
                    Error::NonConvergence { .. } | Error::NumericalBreakdown(_) => {
                        Error::Domain(format!("conjugate evaluation failed: {e}"))
                    }
                    other => other,
                },
            )?;
        let polish = newton_step(self.primal.as_ref(), s, &result.xhat)?;
        let polished = &result.xhat + &polish.step;
        if self.primal.is_interior(&polished) {
            result.xhat = polished;
            result.residual_norm = newton_step(self.primal.as_ref(), s, &result.xhat)?.decrement;
            result.value = -s.dot(&result.xhat) - self.primal.value(&result.xhat)?;
        }
        Ok(result)
    }
}

impl Barrier for ConjugateBarrier {
    fn dim(&self) -> usize {
        self.anchor.len()
    }

    fn theta(&self) -> f64 {
        self.primal.theta()
    }

    fn is_interior(&self, s: &Vector) -> bool {
        self.solve(s).is_ok()
    }

    fn value(&self, s: &Vector) -> Result<f64> {
        Ok(self.solve(s)?.value)
    }

    fn gradient(&self, s: &Vector) -> Result<Vector> {
        Ok(-self.solve(s)?.xhat)
    }

    fn hessian(&self, s: &Vector) -> Result<Matrix> {
        let r = self.solve(s)?;
        spd_inverse(&self.primal.hessian(&r.xhat)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{HyperbolicBarrier, OrthantBarrier, PsdBarrier};
    use crate::cones::psd::svec;
    use crate::polynomial::Polynomial;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_vec(xs.to_vec())
    }

    #[test]
    fn orthant_closed_form() {
        let b = OrthantBarrier::new(2);
        let r = conjugate_newton(&b, &v(&[2.0, 1.0]), &v(&[1.0, 1.0]), 1e-13, 100).unwrap();
        assert!((&r.xhat - v(&[0.5, 1.0])).norm() < 1e-12);
        assert!((r.value - (-(2f64.ln()) - 2.0)).abs() < 1e-12);
        let (g, h) = conjugate_gradient_hessian(&b, &r).unwrap();
        assert!((g + v(&[0.5, 1.0])).norm() < 1e-12);
        assert!((h - Matrix::from_diagonal(&v(&[0.25, 1.0]))).norm() < 1e-12);
    }

    #[test]
    fn zero_residual_start() {
        let b = OrthantBarrier::new(3);
        let x0 = v(&[1.0, 2.0, 0.5]);
        let s = -b.gradient(&x0).unwrap();
        let r = conjugate_newton(&b, &s, &x0, 1e-10, 100).unwrap();
        assert_eq!(r.iterations, 0);
        assert_eq!(r.xhat, x0);
        let probe = local_convergence_probe(&b, &s, &x0).unwrap();
        assert_eq!(probe.xhat_norms, vec![0.0]);
    }

    #[test]
    fn hyperbolic_product_matches_orthant() {
        let b = HyperbolicBarrier::new(Polynomial::coordinate_product(3), v(&[1.0; 3])).unwrap();
        let r = conjugate_newton(&b, &v(&[1.0, 2.0, 4.0]), &v(&[1.0; 3]), 1e-12, 100).unwrap();
        assert!((r.xhat - v(&[1.0, 0.5, 0.25])).norm() < 1e-10);
    }

    #[test]
    fn unconverged_result_is_rejected() {
        let b = OrthantBarrier::new(1);
        let r = ConjugateResult {
            xhat: v(&[1.0]),
            value: 0.0,
            residual_norm: 1.0,
            iterations: 3,
            converged: false,
        };
        assert!(matches!(conjugate_gradient_hessian(&b, &r), Err(Error::Precondition(_))));
    }

    #[test]
    fn psd_inverse_hessian() {
        let b = PsdBarrier::new(2);
        let s = svec(&Matrix::from_diagonal(&v(&[3.0, 5.0])));
        let r = conjugate_newton(&b, &s, &svec(&Matrix::identity(2, 2)), 1e-13, 100).unwrap();
        let (_, h) = conjugate_gradient_hessian(&b, &r).unwrap();
        let closed = PsdBarrier::conjugate(2).hessian(&s).unwrap();
        assert!((h - closed).norm() < 1e-10);
    }

    #[test]
    fn probe_contracts() {
        let b = OrthantBarrier::new(3);
        let x0 = v(&[1.0, 1.0, 1.0]);
        let s = v(&[1.1, 0.9, 1.05]);
        let probe = local_convergence_probe(&b, &s, &x0).unwrap();
        assert!(probe.contraction_ok && probe.quadratic_ok, "{probe:?}");
        assert!(*probe.xhat_norms.last().unwrap() < 1e-12);
    }

    #[test]
    fn conjugate_barrier_rejects_exterior() {
        let primal: Arc<dyn Barrier> =
            Arc::new(HyperbolicBarrier::new(Polynomial::lorentz(3), v(&[1.0, 0.0, 0.0])).unwrap());
        let dual = ConjugateBarrier::new(primal, v(&[1.0, 0.0, 0.0])).unwrap();
        assert!(dual.is_interior(&v(&[2.0, 0.5, 0.5])));
        assert!(!dual.is_interior(&v(&[1.0, 2.0, 0.0])));
    }
}
