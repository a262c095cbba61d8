//! Random interior points and near-central primal-dual pairs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::cones::psd::{smat, svec, svec_len};
use crate::cones::{Barrier, BlockSpec, ConeBlock, ProductCone};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, Matrix, Vector};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn normal_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector {
    Vector::from_fn(n, |_, _| normal(rng))
}

/// A random interior point of one block, at moderate distance from the boundary.
pub fn random_block_point<R: Rng + ?Sized>(block: &ConeBlock, rng: &mut R) -> Vector {
    match &block.spec {
        BlockSpec::Orthant { dim } => Vector::from_fn(*dim, |_, _| (0.5 * normal(rng)).exp()),
        BlockSpec::Soc { dim } => {
            let bar = normal_vector(dim - 1, rng) * 0.5;
            let r = (0.5 * normal(rng)).exp();
            let mut x = Vector::zeros(*dim);
            x[0] = (bar.norm_squared() + r * r).sqrt();
            x.rows_mut(1, dim - 1).copy_from(&bar);
            x
        }
        BlockSpec::Psd { side } => {
            let a = Matrix::from_fn(*side, *side, |_, _| normal(rng));
            let m = &a * a.transpose() / *side as f64 + Matrix::identity(*side, *side) * 0.5;
            svec(&m)
        }
        BlockSpec::Hyperbolic { e, .. } => {
            let e = Vector::from_vec(e.clone());
            let scale = e.norm();
            loop {
                let y = &e * (0.5 * normal(rng)).exp() + normal_vector(e.len(), rng) * (0.25 * scale);
                if block.primal.is_interior(&y) {
                    return y;
                }
            }
        }
    }
}

/// Concatenated random interior points of every block.
pub fn random_interior_point<R: Rng + ?Sized>(cone: &ProductCone, rng: &mut R) -> Vector {
    let mut x = Vector::zeros(cone.dim());
    for (start, block) in cone.ranges() {
        x.rows_mut(start, block.dim())
            .copy_from(&random_block_point(block, rng));
    }
    x
}

/// A random interior point of the dual cone, `-F'(y)` for random interior `y`.
pub fn random_dual_point<R: Rng + ?Sized>(cone: &ProductCone, rng: &mut R) -> Result<Vector> {
    Ok(-cone.primal.gradient(&random_interior_point(cone, rng))?)
}

/// `s = -mu F'(x) + d` with a random `d` orthogonal to `x` and `|d|_s = target`,
/// so `mu` is unchanged and `delta_D = d` exactly.
pub fn near_central_dual<P, D, R>(
    primal: &P,
    dual: &D,
    x: &Vector,
    mu: f64,
    target: f64,
    rng: &mut R,
) -> Result<Vector>
where
    P: Barrier + ?Sized,
    D: Barrier + ?Sized,
    R: Rng + ?Sized,
{
    let center = -primal.gradient(x)? * mu;
    if target == 0.0 {
        return Ok(center);
    }
    let mut dir = normal_vector(x.len(), rng);
    dir -= x * (dir.dot(x) / x.norm_squared());
    let mut tau = target / dir.dot(&(dual.hessian(&center)? * &dir)).sqrt();
    for _ in 0..50 {
        let s = &center + &dir * tau;
        if !dual.is_interior(&s) {
            tau *= 0.5;
            continue;
        }
        let len = (tau * tau * dir.dot(&(dual.hessian(&s)? * &dir))).sqrt();
        if (len - target).abs() <= 1e-12 * target {
            return Ok(s);
        }
        tau *= target / len;
    }
    Err(Error::NonConvergence {
        iterations: 50,
        residual: tau,
    })
}

/// Random symmetric positive-definite matrix with eigenvalues in `[lo, hi]`.
pub fn random_spd<R: Rng + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Matrix {
    let a = Matrix::from_fn(n, n, |_, _| normal(rng));
    let q = a.qr().q();
    let d = Vector::from_fn(n, |_, _| lo + (hi - lo) * rng.random::<f64>());
    &q * Matrix::from_diagonal(&d) * q.transpose()
}

/// A random `side x side` positive-definite matrix in svec form whose distance
/// from `base` in the local norm is exactly `alpha`.
pub fn psd_point_at_distance<R: Rng + ?Sized>(
    base: &Vector,
    side: usize,
    alpha: f64,
    rng: &mut R,
) -> Result<Vector> {
    let b = smat(base, side);
    let l = cholesky(&b)?.l();
    let h = Matrix::from_fn(side, side, |_, _| normal(rng));
    let h = (&h + h.transpose()) * 0.5;
    let h = &h / h.norm();
    // |L H L^T|_X = |H|_F
    let dir = &l * h * l.transpose();
    let z = base + svec(&dir) * alpha;
    debug_assert_eq!(z.len(), svec_len(side));
    Ok(z)
}

/// `theta e / <s, e>` with `e` the unit point of each block: a primal start
/// for conjugate evaluation at `s`.
pub fn central_primal_guess(cone: &ProductCone, s: &Vector) -> Vector {
    let mut x = Vector::zeros(cone.dim());
    for (start, block) in cone.ranges() {
        let d = block.dim();
        let e = match &block.spec {
            BlockSpec::Orthant { .. } => Vector::repeat(d, 1.0),
            BlockSpec::Soc { .. } => {
                let mut e = Vector::zeros(d);
                e[0] = 1.0;
                e
            }
            BlockSpec::Psd { side } => svec(&Matrix::identity(*side, *side)),
            BlockSpec::Hyperbolic { e, .. } => Vector::from_vec(e.clone()),
        };
        let pairing = s.rows(start, d).dot(&e);
        x.rows_mut(start, d)
            .copy_from(&(e * (block.primal.theta() / pairing.max(f64::MIN_POSITIVE))));
    }
    x
}
