use super::{check_dim, require_interior, Barrier};
use crate::error::Result;
use crate::linalg::{Matrix, Vector};

/// `-ln(x_0^2 - |x_bar|^2) + offset` on the second-order cone.
#[derive(Debug, Clone, PartialEq)]
pub struct SocBarrier {
    dim: usize,
    offset: f64,
}

impl SocBarrier {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 2, "second-order cone needs dimension >= 2");
        Self { dim, offset: 0.0 }
    }

    /// The conjugate barrier `-ln(s_0^2 - |s_bar|^2) + 2 ln 2 - 2`.
    pub fn conjugate(dim: usize) -> Self {
        assert!(dim >= 2, "second-order cone needs dimension >= 2");
        Self {
            dim,
            offset: 2.0 * 2f64.ln() - 2.0,
        }
    }

    fn gap(x: &Vector) -> f64 {
        x[0] * x[0] - x.rows(1, x.len() - 1).norm_squared()
    }

    fn reflect(x: &Vector) -> Vector {
        let mut j = -x;
        j[0] = x[0];
        j
    }
}

impl Barrier for SocBarrier {
    fn dim(&self) -> usize {
        self.dim
    }

    fn theta(&self) -> f64 {
        2.0
    }

    fn is_interior(&self, x: &Vector) -> bool {
        check_dim(x, self.dim).is_ok()
            && x.iter().all(|v| v.is_finite())
            && x[0] > 0.0
            && Self::gap(x) > 0.0
    }

    fn value(&self, x: &Vector) -> Result<f64> {
        require_interior(self, x)?;
        Ok(-Self::gap(x).ln() + self.offset)
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        require_interior(self, x)?;
        Ok(Self::reflect(x) * (-2.0 / Self::gap(x)))
    }

    fn hessian(&self, x: &Vector) -> Result<Matrix> {
        require_interior(self, x)?;
        let q = Self::gap(x);
        let jx = Self::reflect(x);
        let mut h = &jx * jx.transpose() * (4.0 / (q * q));
        h[(0, 0)] -= 2.0 / q;
        for i in 1..self.dim {
            h[(i, i)] += 2.0 / q;
        }
        Ok(h)
    }
}
