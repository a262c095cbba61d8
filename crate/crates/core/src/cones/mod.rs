//! Logarithmically homogeneous self-concordant barriers for the supported cones.
//!
//! Every barrier works on a flat coordinate vector whose Euclidean inner
//! product is the pairing between the primal space and its dual. Symmetric
//! matrices are stored as scaled upper triangles (see [`psd::svec`]) so the
//! trace inner product is the plain dot product.

mod checks;
mod hyperbolic;
mod orthant;
mod product;
pub mod psd;
mod soc;

pub use checks::{
    dikin_bound_check, local_norm, verify_lhscb_identities, DikinReport, IdentityCheck,
    IdentityReport, LocalNormContext, NormSide,
};
pub use hyperbolic::HyperbolicBarrier;
pub use orthant::OrthantBarrier;
pub use product::{BlockSpec, ConeBlock, ProductBarrier, ProductCone};
pub use psd::{PsdBarrier, PsdSliceBarrier};
pub use soc::SocBarrier;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::quadrature::{adaptive_hessian_integral, LineRule};

/// A barrier `F` for a cone, with parameter `theta`.
pub trait Barrier: Send + Sync + std::fmt::Debug {
    fn dim(&self) -> usize;

    fn theta(&self) -> f64;

    fn is_interior(&self, x: &Vector) -> bool;

    fn value(&self, x: &Vector) -> Result<f64>;

    fn gradient(&self, x: &Vector) -> Result<Vector>;

    fn hessian(&self, x: &Vector) -> Result<Matrix>;

    /// `int_0^1 F''(base - t * direction) dt`.
    ///
    /// Both `base` and `base - direction` must be interior. Cones with a
    /// closed form override this; the default integrates numerically.
    fn hessian_line_integral(
        &self,
        base: &Vector,
        direction: &Vector,
        rule: &LineRule,
    ) -> Result<Matrix> {
        adaptive_hessian_integral(self, base, direction, rule)
    }
}

pub(crate) fn check_dim(x: &Vector, n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    Ok(())
}

pub(crate) fn require_interior<B: Barrier + ?Sized>(b: &B, x: &Vector) -> Result<()> {
    check_dim(x, b.dim())?;
    if !b.is_interior(x) {
        return Err(Error::Domain(format!("{:?}", x.as_slice())));
    }
    Ok(())
}

pub(crate) fn require_segment<B: Barrier + ?Sized>(
    b: &B,
    base: &Vector,
    direction: &Vector,
) -> Result<()> {
    require_interior(b, base)?;
    check_dim(direction, b.dim())?;
    require_interior(b, &(base - direction))
}
