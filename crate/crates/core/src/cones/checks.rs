//! Numerical verification of barrier identities and local-norm helpers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{require_interior, Barrier};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, generalized_eigen_range, quad_form, Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormSide {
    /// `|h|_x = <F''(x) h, h>^(1/2)`
    Primal,
    /// `|u|*_x = <u, F''(x)^-1 u>^(1/2)`
    Dual,
}

#[derive(Debug, Clone)]
pub struct LocalNormContext {
    pub base: Vector,
    pub hessian: Matrix,
    pub side: NormSide,
}

impl LocalNormContext {
    pub fn new<B: Barrier + ?Sized>(oracle: &B, base: &Vector, side: NormSide) -> Result<Self> {
        Ok(Self {
            base: base.clone(),
            hessian: oracle.hessian(base)?,
            side,
        })
    }
}

pub fn local_norm(ctx: &LocalNormContext, h: &Vector) -> Result<f64> {
    let q = match ctx.side {
        NormSide::Primal => quad_form(&ctx.hessian, h),
        NormSide::Dual => h.dot(&cholesky(&ctx.hessian)?.solve(h)),
    };
    let scale = 1e-12 * h.norm_squared() * ctx.hessian.norm().max(1.0);
    if q < -scale || !q.is_finite() {
        return Err(Error::NumericalBreakdown(format!(
            "negative local quadratic form {q:e}"
        )));
    }
    Ok(q.max(0.0).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, residual: f64, tolerance: f64) {
        self.checks.push(IdentityCheck {
            name,
            residual,
            tolerance,
            passed: residual.is_finite() && residual < tolerance,
        });
    }
}

const FD_TOLERANCE: f64 = 1e-4;
const SELF_CONCORDANCE_SAMPLES: usize = 8;

/// Residuals of the identities every logarithmically homogeneous
/// self-concordant barrier satisfies, evaluated at `x`.
///
/// Finite-difference checks use a step of `1e-5` in the local norm and are
/// compared against `max(tol, 1e-4)`.
pub fn verify_lhscb_identities<B: Barrier + ?Sized>(
    oracle: &B,
    x: &Vector,
    tol: f64,
) -> Result<IdentityReport> {
    require_interior(oracle, x)?;
    let theta = oracle.theta();
    let f = oracle.value(x)?;
    let g = oracle.gradient(x)?;
    let h = oracle.hessian(x)?;
    let mut report = IdentityReport { checks: Vec::new() };

    for (name, t) in [("log_homogeneity_t0.5", 0.5), ("log_homogeneity_t2", 2.0)] {
        let ft = oracle.value(&(x * t))?;
        report.push(name, (ft - f + theta * f64::ln(t)).abs() / (1.0 + f.abs()), tol);
    }

    let hx = &h * x;
    report.push("hessian_x_plus_gradient", (&hx + &g).norm() / (1.0 + g.norm()), tol);
    report.push("theta_pairing", (-g.dot(x) - theta).abs() / theta, tol);

    let fd_tol = tol.max(FD_TOLERANCE);
    // F'''(x)[x] = -2 F''(x); step along x scaled to local length 1e-5
    let step = 1e-5 / theta.sqrt();
    let plus = oracle.hessian(&(x * (1.0 + step)))?;
    let minus = oracle.hessian(&(x * (1.0 - step)))?;
    let third = (plus - minus) / (2.0 * step);
    report.push(
        "third_derivative_identity",
        (&third + &h * 2.0).norm() / h.norm(),
        fd_tol,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut worst: f64 = 0.0;
    for _ in 0..SELF_CONCORDANCE_SAMPLES {
        let mut dir = Vector::from_fn(x.len(), |_, _| rng.sample::<f64, _>(StandardNormal));
        let len = quad_form(&h, &dir).sqrt();
        if len == 0.0 {
            continue;
        }
        dir /= len;
        let eps = 1e-5;
        let up = quad_form(&oracle.hessian(&(x + &dir * eps))?, &dir);
        let down = quad_form(&oracle.hessian(&(x - &dir * eps))?, &dir);
        let d3 = (up - down) / (2.0 * eps);
        // |D3F[h,h,h]| <= 2 (D2F[h,h])^(3/2) = 2 for unit local length
        worst = worst.max(d3.abs() - 2.0);
    }
    report.push("self_concordance", worst.max(0.0), fd_tol);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DikinReport {
    pub alpha: f64,
    pub z_interior: bool,
    /// Extreme eigenvalues of `F''(z)` relative to `F''(x)`.
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub passed: bool,
}

/// Checks `(1-a)^2 F''(x) <= F''(z) <= (1-a)^-2 F''(x)` with `a = |x - z|_x < 1`.
pub fn dikin_bound_check<B: Barrier + ?Sized>(
    oracle: &B,
    x: &Vector,
    z: &Vector,
) -> Result<DikinReport> {
    require_interior(oracle, x)?;
    let hx = oracle.hessian(x)?;
    let alpha = quad_form(&hx, &(x - z)).max(0.0).sqrt();
    if alpha >= 1.0 {
        return Err(Error::Precondition(format!(
            "|x - z|_x = {alpha} is not below 1"
        )));
    }
    let z_interior = oracle.is_interior(z);
    let hz = oracle.hessian(z)?;
    let (min_ratio, max_ratio) = generalized_eigen_range(&hz, &hx)?;
    let lower_bound = (1.0 - alpha).powi(2);
    let upper_bound = 1.0 / lower_bound;
    let slack = 1e-10;
    Ok(DikinReport {
        alpha,
        z_interior,
        min_ratio,
        max_ratio,
        lower_bound,
        upper_bound,
        passed: z_interior
            && min_ratio >= lower_bound * (1.0 - slack)
            && max_ratio <= upper_bound * (1.0 + slack),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{OrthantBarrier, PsdBarrier};
    use crate::cones::psd::svec;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_vec(xs.to_vec())
    }

    #[test]
    fn orthant_identities_are_tight() {
        let report = verify_lhscb_identities(&OrthantBarrier::new(2), &v(&[1.0, 1.0]), 1e-8).unwrap();
        for c in &report.checks {
            assert!(c.residual < 1e-8, "{} = {}", c.name, c.residual);
        }
    }

    #[test]
    fn psd_hessian_identity() {
        let x = svec(&Matrix::from_diagonal(&v(&[2.0, 1.0])));
        let report = verify_lhscb_identities(&PsdBarrier::new(2), &x, 1e-8).unwrap();
        assert!(report.get("hessian_x_plus_gradient").unwrap().residual < 1e-8);
        assert!(report.all_passed());
    }

    #[test]
    fn local_norms() {
        let b = OrthantBarrier::new(2);
        let ctx = LocalNormContext::new(&b, &v(&[1.0, 1.0]), NormSide::Primal).unwrap();
        assert_eq!(local_norm(&ctx, &v(&[1.0, 0.0])).unwrap(), 1.0);
        assert!((local_norm(&ctx, &v(&[1.0, 1.0])).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let dual = LocalNormContext::new(&b, &v(&[2.0, 1.0]), NormSide::Dual).unwrap();
        assert!((local_norm(&dual, &v(&[1.0, 1.0])).unwrap() - 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn dikin_orthant_is_tight() {
        let r = dikin_bound_check(&OrthantBarrier::new(1), &v(&[2.0]), &v(&[1.5])).unwrap();
        assert!((r.alpha - 0.25).abs() < 1e-15);
        assert!((r.max_ratio - 16.0 / 9.0).abs() < 1e-12);
        assert!(r.passed);
        let same = dikin_bound_check(&OrthantBarrier::new(1), &v(&[2.0]), &v(&[2.0])).unwrap();
        assert_eq!((same.min_ratio, same.max_ratio), (1.0, 1.0));
        assert!(matches!(
            dikin_bound_check(&OrthantBarrier::new(1), &v(&[2.0]), &v(&[0.0])),
            Err(Error::Precondition(_))
        ));
    }
}
