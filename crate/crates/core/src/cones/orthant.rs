use super::{check_dim, require_interior, require_segment, Barrier};
use crate::error::Result;
use crate::linalg::{Matrix, Vector};
use crate::quadrature::LineRule;

/// `-sum ln x_i + offset` on the nonnegative orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthantBarrier {
    dim: usize,
    offset: f64,
}

impl OrthantBarrier {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "orthant dimension must be positive");
        Self { dim, offset: 0.0 }
    }

    /// The conjugate barrier `-sum ln s_i - k` of [`OrthantBarrier::new`].
    pub fn conjugate(dim: usize) -> Self {
        assert!(dim >= 1, "orthant dimension must be positive");
        Self {
            dim,
            offset: -(dim as f64),
        }
    }
}

impl Barrier for OrthantBarrier {
    fn dim(&self) -> usize {
        self.dim
    }

    fn theta(&self) -> f64 {
        self.dim as f64
    }

    fn is_interior(&self, x: &Vector) -> bool {
        check_dim(x, self.dim).is_ok() && x.iter().all(|&v| v > 0.0 && v.is_finite())
    }

    fn value(&self, x: &Vector) -> Result<f64> {
        require_interior(self, x)?;
        Ok(-x.iter().map(|v| v.ln()).sum::<f64>() + self.offset)
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        require_interior(self, x)?;
        Ok(x.map(|v| -1.0 / v))
    }

    fn hessian(&self, x: &Vector) -> Result<Matrix> {
        require_interior(self, x)?;
        Ok(Matrix::from_diagonal(&x.map(|v| 1.0 / (v * v))))
    }

    fn hessian_line_integral(
        &self,
        base: &Vector,
        direction: &Vector,
        _rule: &LineRule,
    ) -> Result<Matrix> {
        require_segment(self, base, direction)?;
        // int_0^1 (a - t d)^-2 dt = 1 / (a (a - d))
        let d = base.zip_map(direction, |a, d| 1.0 / (a * (a - d)));
        Ok(Matrix::from_diagonal(&d))
    }
}
