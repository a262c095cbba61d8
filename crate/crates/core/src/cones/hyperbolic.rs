use super::{check_dim, require_interior, require_segment, Barrier};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::polynomial::Polynomial;
use crate::quadrature::{adaptive_hessian_integral, hyperbolic_hessian_integral, LineRule};

/// `-ln p(x)` on the hyperbolicity cone of `p` containing `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicBarrier {
    poly: Polynomial,
    e: Vector,
}

impl HyperbolicBarrier {
    /// `p` is assumed hyperbolic in direction `e`; only `p(e) > 0` is checked here.
    /// Use [`HyperbolicBarrier::sampled_hyperbolicity`] to spot-check the assumption.
    pub fn new(poly: Polynomial, e: Vector) -> Result<Self> {
        check_dim(&e, poly.nvars())?;
        let pe = poly.eval(&e);
        if !(pe > 0.0) {
            return Err(Error::Invalid(format!("p(e) = {pe} is not positive")));
        }
        Ok(Self { poly, e })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn direction(&self) -> &Vector {
        &self.e
    }

    /// Largest imaginary part among the roots of `t -> p(x + t e)` over the
    /// given points. Zero (up to rounding) for a hyperbolic polynomial.
    pub fn sampled_hyperbolicity(&self, points: &[Vector]) -> f64 {
        points
            .iter()
            .flat_map(|x| self.poly.restrict(x, &self.e).roots())
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }

    /// `p'(y) p'(y)^T - p(y) p''(y)`, the polynomial numerator of `p(y)^2 F''(y)`.
    pub(crate) fn hessian_numerator(&self, y: &Vector) -> Matrix {
        let g = self.poly.gradient(y);
        &g * g.transpose() - self.poly.hessian(y) * self.poly.eval(y)
    }
}

impl Barrier for HyperbolicBarrier {
    fn dim(&self) -> usize {
        self.poly.nvars()
    }

    fn theta(&self) -> f64 {
        self.poly.degree() as f64
    }

    /// For `x` in the cone all roots of `t -> p(x + t e)` are real and
    /// nonpositive, so its coefficients share the sign of `p(e)`; strictly
    /// positive coefficients rule out any root `t >= 0`.
    fn is_interior(&self, x: &Vector) -> bool {
        if check_dim(x, self.dim()).is_err() || x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        let r = self.poly.restrict(x, &self.e);
        r.coefficients.iter().all(|&c| c > 0.0)
    }

    fn value(&self, x: &Vector) -> Result<f64> {
        require_interior(self, x)?;
        Ok(-self.poly.eval(x).ln())
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        require_interior(self, x)?;
        Ok(self.poly.gradient(x) / -self.poly.eval(x))
    }

    fn hessian(&self, x: &Vector) -> Result<Matrix> {
        require_interior(self, x)?;
        let p = self.poly.eval(x);
        Ok(self.hessian_numerator(x) / (p * p))
    }

    fn hessian_line_integral(
        &self,
        base: &Vector,
        direction: &Vector,
        rule: &LineRule,
    ) -> Result<Matrix> {
        require_segment(self, base, direction)?;
        match hyperbolic_hessian_integral(self, base, direction) {
            Err(Error::IllConditioned(_)) => adaptive_hessian_integral(self, base, direction, rule),
            other => other,
        }
    }
}
