//! Dense symmetric linear algebra shared by the barrier, metric and solver code.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

pub fn quad_form(m: &Matrix, v: &Vector) -> f64 {
    v.dot(&(m * v))
}

pub fn eigen(m: &Matrix) -> SymmetricEigen<f64, Dyn> {
    SymmetricEigen::new(symmetrize(m))
}

pub fn min_eigenvalue(m: &Matrix) -> f64 {
    eigen(m).eigenvalues.min()
}

pub fn cholesky(m: &Matrix) -> Result<Cholesky<f64, Dyn>> {
    Cholesky::new(symmetrize(m)).ok_or_else(|| Error::NotPositiveDefinite {
        min_eigenvalue: min_eigenvalue(m),
    })
}

/// `m^p` for a symmetric positive-definite `m`.
pub fn spd_pow(m: &Matrix, p: f64) -> Result<Matrix> {
    let eig = eigen(m);
    let min = eig.eigenvalues.min();
    if min <= 0.0 || !min.is_finite() {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    let d = eig.eigenvalues.map(|l| l.powf(p));
    Ok(symmetrize(
        &(&eig.eigenvectors * Matrix::from_diagonal(&d) * eig.eigenvectors.transpose()),
    ))
}

pub fn spd_sqrt(m: &Matrix) -> Result<Matrix> {
    spd_pow(m, 0.5)
}

pub fn spd_inverse(m: &Matrix) -> Result<Matrix> {
    Ok(symmetrize(&cholesky(m)?.inverse()))
}

/// Extreme eigenvalues of the pencil `b - lambda a` with `a` positive definite.
pub fn generalized_eigen_range(b: &Matrix, a: &Matrix) -> Result<(f64, f64)> {
    let reduced = congruence_by_inverse_factor(b, a)?;
    let ev = eigen(&reduced).eigenvalues;
    Ok((ev.min(), ev.max()))
}

/// `L^{-1} m L^{-T}` where `a = L L^T`.
pub fn congruence_by_inverse_factor(m: &Matrix, a: &Matrix) -> Result<Matrix> {
    let chol = cholesky(a)?;
    let l = chol.l();
    let left = l
        .solve_lower_triangular(m)
        .ok_or_else(|| Error::NumericalBreakdown("triangular solve".into()))?;
    let both = l
        .solve_lower_triangular(&left.transpose())
        .ok_or_else(|| Error::NumericalBreakdown("triangular solve".into()))?;
    Ok(symmetrize(&both))
}

/// `sup { |M u|_* : |u| <= 1 }` where `|u|^2 = <G u, u>` and the dual norm uses `G^{-1}`.
pub fn local_operator_norm(m: &Matrix, g: &Matrix) -> Result<f64> {
    let chol = cholesky(g)?;
    let l = chol.l();
    let left = l
        .solve_lower_triangular(m)
        .ok_or_else(|| Error::NumericalBreakdown("triangular solve".into()))?;
    let both = l
        .solve_lower_triangular(&left.transpose())
        .ok_or_else(|| Error::NumericalBreakdown("triangular solve".into()))?;
    Ok(both.singular_values().max())
}

/// Number of singular values above `rel_tol` times the largest.
pub fn numerical_rank(m: &Matrix, rel_tol: f64) -> usize {
    let sv = m.singular_values();
    let top = sv.max();
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&v| v > rel_tol * top).count()
}

pub fn relative_frobenius(a: &Matrix, b: &Matrix) -> f64 {
    let scale = b.norm().max(f64::MIN_POSITIVE);
    (a - b).norm() / scale
}

pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Matrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((at, at), (k, k)).copy_from(b);
        at += k;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_diagonal() {
        let m = Matrix::from_diagonal(&Vector::from_vec(vec![4.0, 9.0]));
        let r = spd_sqrt(&m).unwrap();
        assert!((r[(0, 0)] - 2.0).abs() < 1e-14);
        assert!((r[(1, 1)] - 3.0).abs() < 1e-14);
        assert!(r[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn generalized_range_of_scaled_identity() {
        let a = Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 4.0]));
        let b = Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 12.0]));
        let (lo, hi) = generalized_eigen_range(&b, &a).unwrap();
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 3.0).abs() < 1e-14);
    }

    #[test]
    fn operator_norm_rank_one() {
        // |h h^T|_s = (|h|*_s)^2
        let g = Matrix::from_diagonal(&Vector::from_vec(vec![0.25, 1.0]));
        let h = Vector::from_vec(vec![1.0, 1.0]);
        let m = &h * h.transpose();
        let dual_sq = h.dot(&(spd_inverse(&g).unwrap() * &h));
        assert!((local_operator_norm(&m, &g).unwrap() - dual_sq).abs() < 1e-12);
    }

    #[test]
    fn non_pd_is_rejected() {
        let m = Matrix::from_diagonal(&Vector::from_vec(vec![1.0, -1.0]));
        assert!(matches!(cholesky(&m), Err(Error::NotPositiveDefinite { .. })));
        assert!(spd_sqrt(&m).is_err());
    }
}
