use super::{operator_geometric_mean, LocalMetric, Provenance, ShadowPair};
use crate::cones::{BlockSpec, ProductCone};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Nesterov-Todd scaling `T^2 = F''(x)^-1 # F*''(s)`, block by block.
///
/// On a symmetric cone `F''(x)^-1 = F*''(s~)`, and the geometric mean of the
/// two Hessians is the Hessian at the scaling point, so `T^2 s = x`. Second
/// order cone blocks are accepted only if that mapping is verified.
pub fn nt_scaling(cone: &ProductCone, pair: &ShadowPair) -> Result<LocalMetric> {
    let n = cone.dim();
    let mut t2 = Matrix::zeros(n, n);
    for (start, block) in cone.ranges() {
        if !block.spec.is_symmetric() {
            return Err(Error::Unsupported(format!(
                "NT scaling needs a symmetric cone block, got {:?}",
                block.spec
            )));
        }
        let d = block.dim();
        let x = pair.x.rows(start, d).into_owned();
        let s = pair.s.rows(start, d).into_owned();
        let inv_primal = crate::linalg::spd_inverse(&block.primal.hessian(&x)?)?;
        let dual = block.dual.hessian(&s)?;
        let g = operator_geometric_mean(&inv_primal, &dual)?;
        if matches!(block.spec, BlockSpec::Soc { .. }) {
            let miss = (&g * &s - &x).norm() / x.norm();
            if miss > 1e-8 {
                return Err(Error::Unsupported(format!(
                    "geometric-mean scaling misses s -> x by {miss:e} on {:?}",
                    block.spec
                )));
            }
        }
        t2.view_mut((start, start), (d, d)).copy_from(&g);
    }
    LocalMetric::new(t2, Provenance::NtGeodesic)
}
