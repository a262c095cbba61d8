//! Cone automorphisms that map a unit point to the current primal iterate, so
//! the Newton system is formed where the iterates are well conditioned.

use crate::cones::psd::{congruence_operator, smat, svec};
use crate::cones::{BlockSpec, ProductCone};
use crate::error::{Error, Result};
use crate::linalg::{block_diagonal, cholesky, Matrix, Vector};

/// Block-diagonal automorphism `L` with `L e = x`; primal vectors map as
/// `x = L x^`, dual vectors as `s^ = L^T s`.
pub(crate) struct BlockAutomorphism {
    pub lambda: Matrix,
    pub unit: Vector,
}

fn soc_boost(x: &Vector) -> Result<(Matrix, Vector)> {
    let n = x.len();
    let bar = x.rows(1, n - 1);
    let r = bar.norm();
    let det = (x[0] - r) * (x[0] + r);
    if !(x[0] > r) {
        return Err(Error::Domain("scaling point outside the second-order cone".into()));
    }
    let root = det.sqrt();
    let u0 = x[0] / root;
    let ubar = bar / root;
    // Lorentz boost taking (1, 0, ..., 0) to x / sqrt(det x)
    let mut b = Matrix::zeros(n, n);
    b[(0, 0)] = u0;
    b.view_mut((1, 1), (n - 1, n - 1))
        .copy_from(&(Matrix::identity(n - 1, n - 1) + &ubar * ubar.transpose() / (1.0 + u0)));
    for i in 1..n {
        b[(0, i)] = ubar[i - 1];
        b[(i, 0)] = ubar[i - 1];
    }
    let mut unit = Vector::zeros(n);
    unit[0] = 1.0;
    Ok((b * root, unit))
}

fn block_automorphism(spec: &BlockSpec, x: &Vector) -> Result<(Matrix, Vector)> {
    match spec {
        BlockSpec::Orthant { dim } => Ok((Matrix::from_diagonal(x), Vector::repeat(*dim, 1.0))),
        BlockSpec::Soc { .. } => soc_boost(x),
        BlockSpec::Psd { side } => {
            let l = cholesky(&smat(x, *side))?.l();
            Ok((congruence_operator(&l), svec(&Matrix::identity(*side, *side))))
        }
        // no automorphism is assumed; the block is left in place
        BlockSpec::Hyperbolic { .. } => Ok((Matrix::identity(x.len(), x.len()), x.clone())),
    }
}

impl BlockAutomorphism {
    pub fn at(cone: &ProductCone, x: &Vector) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut unit = Vector::zeros(cone.dim());
        for (start, block) in cone.ranges() {
            let d = block.dim();
            let (l, e) = block_automorphism(&block.spec, &x.rows(start, d).into_owned())?;
            unit.rows_mut(start, d).copy_from(&e);
            blocks.push(l);
        }
        Ok(Self {
            lambda: block_diagonal(&blocks),
            unit,
        })
    }
}
