//! `-ln det X` on the positive semidefinite cone and on coordinate slices of it.

use super::{check_dim, require_interior, require_segment, Barrier};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, eigen, symmetrize, Matrix, Vector};
use crate::quadrature::LineRule;

/// Length of the scaled upper-triangle vector for a `side x side` matrix.
pub fn svec_len(side: usize) -> usize {
    side * (side + 1) / 2
}

/// Side of the matrix whose scaled upper triangle has length `len`.
pub fn side_from_len(len: usize) -> Option<usize> {
    let side = ((((8 * len + 1) as f64).sqrt() - 1.0) / 2.0).round() as usize;
    (svec_len(side) == len).then_some(side)
}

/// Index of entry `(i, j)`, `i <= j`, in the row-major upper-triangle order.
pub fn svec_index(side: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * side - i * (i + 1) / 2 + j
}

/// Scaled upper triangle: off-diagonal entries carry a factor `sqrt 2`, so
/// `svec(A) . svec(B) = Tr(AB)`.
pub fn svec(m: &Matrix) -> Vector {
    let side = m.nrows();
    let mut v = Vector::zeros(svec_len(side));
    let mut k = 0;
    for i in 0..side {
        for j in i..side {
            v[k] = if i == j {
                m[(i, i)]
            } else {
                std::f64::consts::SQRT_2 * 0.5 * (m[(i, j)] + m[(j, i)])
            };
            k += 1;
        }
    }
    v
}

pub fn smat(v: &Vector, side: usize) -> Matrix {
    let mut m = Matrix::zeros(side, side);
    let mut k = 0;
    for i in 0..side {
        for j in i..side {
            if i == j {
                m[(i, i)] = v[k];
            } else {
                let e = v[k] / std::f64::consts::SQRT_2;
                m[(i, j)] = e;
                m[(j, i)] = e;
            }
            k += 1;
        }
    }
    m
}

/// Matrix (in svec coordinates) of the operator `H -> L H L^T`.
pub fn congruence_operator(l: &Matrix) -> Matrix {
    let side = l.nrows();
    let n = svec_len(side);
    let mut op = Matrix::zeros(n, n);
    let mut basis = Vector::zeros(n);
    for col in 0..n {
        basis[col] = 1.0;
        let h = smat(&basis, side);
        op.set_column(col, &svec(&(l * h * l.transpose())));
        basis[col] = 0.0;
    }
    op
}

/// `(ln b - ln a) / (b - a)`, equal to `int_0^1 dt / ((1-t) a + t b) ...` style
/// divided differences of the logarithm; `1/a` when `a == b`.
pub(crate) fn log_divided_difference(a: f64, b: f64) -> f64 {
    let u = (b - a) / a;
    if u == 0.0 {
        1.0 / a
    } else {
        u.ln_1p() / (u * a)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsdBarrier {
    side: usize,
    offset: f64,
}

impl PsdBarrier {
    pub fn new(side: usize) -> Self {
        assert!(side >= 1, "matrix side must be positive");
        Self { side, offset: 0.0 }
    }

    /// The conjugate barrier `-ln det S - side`.
    pub fn conjugate(side: usize) -> Self {
        assert!(side >= 1, "matrix side must be positive");
        Self {
            side,
            offset: -(side as f64),
        }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    fn inverse(&self, x: &Vector) -> Result<Matrix> {
        require_interior(self, x)?;
        Ok(symmetrize(&cholesky(&smat(x, self.side))?.inverse()))
    }
}

impl Barrier for PsdBarrier {
    fn dim(&self) -> usize {
        svec_len(self.side)
    }

    fn theta(&self) -> f64 {
        self.side as f64
    }

    fn is_interior(&self, x: &Vector) -> bool {
        check_dim(x, self.dim()).is_ok()
            && x.iter().all(|v| v.is_finite())
            && nalgebra::Cholesky::new(smat(x, self.side)).is_some()
    }

    fn value(&self, x: &Vector) -> Result<f64> {
        require_interior(self, x)?;
        let chol = cholesky(&smat(x, self.side))?;
        let logdet: f64 = 2.0 * chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
        Ok(-logdet + self.offset)
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        Ok(-svec(&self.inverse(x)?))
    }

    fn hessian(&self, x: &Vector) -> Result<Matrix> {
        let inv = self.inverse(x)?;
        Ok(symmetrize(&congruence_operator(&inv)))
    }

    fn hessian_line_integral(
        &self,
        base: &Vector,
        direction: &Vector,
        _rule: &LineRule,
    ) -> Result<Matrix> {
        require_segment(self, base, direction)?;
        let side = self.side;
        // base = L L^T, L^-1 D L^-T = Q diag(lambda) Q^T, U = L Q, so
        // base - t D = U diag(1 - t lambda) U^T and the integral is diagonal
        // in the basis U E_ij U^T with entries int dt / ((1-t l_i)(1-t l_j)).
        let chol = cholesky(&smat(base, side))?;
        let l = chol.l();
        let d = smat(direction, side);
        let left = l
            .solve_lower_triangular(&d)
            .ok_or_else(|| Error::NumericalBreakdown("triangular solve".into()))?;
        let m = l
            .solve_lower_triangular(&left.transpose())
            .ok_or_else(|| Error::NumericalBreakdown("triangular solve".into()))?;
        let eig = eigen(&m);
        let ends: Vec<f64> = eig.eigenvalues.iter().map(|lam| 1.0 - lam).collect();
        if ends.iter().any(|&a| a <= 0.0) {
            return Err(Error::Domain("segment end is not interior".into()));
        }
        let u = &l * &eig.eigenvectors;
        let u_inv = u
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::NumericalBreakdown("singular congruence".into()))?;
        let n = svec_len(side);
        let mut op = Matrix::zeros(n, n);
        let mut basis = Vector::zeros(n);
        for col in 0..n {
            basis[col] = 1.0;
            let h = smat(&basis, side);
            let mut inner = &u_inv * h * u_inv.transpose();
            for i in 0..side {
                for j in 0..side {
                    inner[(i, j)] *= log_divided_difference(ends[i], ends[j]);
                }
            }
            let out = u_inv.transpose() * inner * &u_inv;
            op.set_column(col, &svec(&out));
            basis[col] = 0.0;
        }
        Ok(symmetrize(&op))
    }
}

/// `-ln det X` restricted to the symmetric matrices whose only free entries
/// are the listed upper-triangle positions (all other entries are zero).
///
/// Coordinates are the corresponding svec entries, which form an orthonormal
/// basis of the slice, so projections onto the slice are coordinate
/// restrictions.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdSliceBarrier {
    full: PsdBarrier,
    coords: Vec<usize>,
}

impl PsdSliceBarrier {
    /// `entries` are `(i, j)` pairs with `i <= j`; every diagonal entry must be free.
    pub fn new(side: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut coords: Vec<usize> = entries
            .iter()
            .map(|&(i, j)| {
                if i >= side || j >= side {
                    Err(Error::Invalid(format!("entry ({i},{j}) outside {side}x{side}")))
                } else {
                    Ok(svec_index(side, i, j))
                }
            })
            .collect::<Result<_>>()?;
        coords.sort_unstable();
        coords.dedup();
        for i in 0..side {
            if !coords.contains(&svec_index(side, i, i)) {
                return Err(Error::Invalid("slice must contain the identity".into()));
            }
        }
        Ok(Self {
            full: PsdBarrier::new(side),
            coords,
        })
    }

    pub fn side(&self) -> usize {
        self.full.side
    }

    pub fn embed(&self, z: &Vector) -> Vector {
        let mut full = Vector::zeros(self.full.dim());
        for (k, &c) in self.coords.iter().enumerate() {
            full[c] = z[k];
        }
        full
    }

    /// Orthogonal projection of a full svec vector onto the slice.
    pub fn project(&self, full: &Vector) -> Vector {
        Vector::from_iterator(self.coords.len(), self.coords.iter().map(|&c| full[c]))
    }

    pub fn to_matrix(&self, z: &Vector) -> Matrix {
        smat(&self.embed(z), self.full.side)
    }

    pub fn from_matrix(&self, m: &Matrix) -> Vector {
        self.project(&svec(m))
    }
}

impl Barrier for PsdSliceBarrier {
    fn dim(&self) -> usize {
        self.coords.len()
    }

    fn theta(&self) -> f64 {
        self.full.theta()
    }

    fn is_interior(&self, z: &Vector) -> bool {
        check_dim(z, self.dim()).is_ok() && self.full.is_interior(&self.embed(z))
    }

    fn value(&self, z: &Vector) -> Result<f64> {
        check_dim(z, self.dim())?;
        self.full.value(&self.embed(z))
    }

    fn gradient(&self, z: &Vector) -> Result<Vector> {
        check_dim(z, self.dim())?;
        Ok(self.project(&self.full.gradient(&self.embed(z))?))
    }

    fn hessian(&self, z: &Vector) -> Result<Matrix> {
        check_dim(z, self.dim())?;
        let h = self.full.hessian(&self.embed(z))?;
        let k = self.coords.len();
        Ok(Matrix::from_fn(k, k, |a, b| h[(self.coords[a], self.coords[b])]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svec_preserves_trace_inner_product() {
        let a = Matrix::from_row_slice(3, 3, &[2.0, 1.0, 0.5, 1.0, 3.0, -1.0, 0.5, -1.0, 4.0]);
        let b = Matrix::from_row_slice(3, 3, &[1.0, -2.0, 0.0, -2.0, 1.0, 0.3, 0.0, 0.3, 2.0]);
        let tr = (&a * &b).trace();
        assert!((svec(&a).dot(&svec(&b)) - tr).abs() < 1e-13);
        assert!((smat(&svec(&a), 3) - a).norm() < 1e-14);
    }

    #[test]
    fn identity_point() {
        let b = PsdBarrier::new(2);
        let x = svec(&Matrix::identity(2, 2));
        assert!((b.gradient(&x).unwrap() + &x).norm() < 1e-15);
        assert!((b.hessian(&x).unwrap() - Matrix::identity(3, 3)).norm() < 1e-14);
    }

    #[test]
    fn diagonal_value() {
        let b = PsdBarrier::new(2);
        let x = svec(&Matrix::from_diagonal(&Vector::from_vec(vec![2.0, 1.0])));
        assert!((b.value(&x).unwrap() + 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn non_pd_is_domain_error() {
        let b = PsdBarrier::new(2);
        let x = svec(&Matrix::from_diagonal(&Vector::from_vec(vec![1.0, -1.0])));
        assert!(!b.is_interior(&x));
        assert!(matches!(b.gradient(&x), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_form_integral_matches_fine_quadrature() {
        let b = PsdBarrier::new(2);
        let base = svec(&Matrix::from_row_slice(2, 2, &[2.0, 0.3, 0.3, 1.0]));
        let dir = svec(&Matrix::from_row_slice(2, 2, &[0.5, -0.2, -0.2, 0.4]));
        let exact = b
            .hessian_line_integral(&base, &dir, &LineRule::default())
            .unwrap();
        // composite midpoint rule, 4000 panels
        let panels = 4000;
        let mut acc = Matrix::zeros(3, 3);
        for k in 0..panels {
            let t = (k as f64 + 0.5) / panels as f64;
            acc += b.hessian(&(&base - &dir * t)).unwrap() / panels as f64;
        }
        assert!((exact - acc).norm() < 1e-6);
    }

    #[test]
    fn slice_projects_gradient() {
        let slice = PsdSliceBarrier::new(3, &[(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]).unwrap();
        assert_eq!(slice.dim(), 5);
        let m = Matrix::from_row_slice(3, 3, &[2.0, 0.5, 0.3, 0.5, 1.0, 0.0, 0.3, 0.0, 1.5]);
        let z = slice.from_matrix(&m);
        let g = slice.gradient(&z).unwrap();
        let full = -svec(&m.clone().try_inverse().unwrap());
        assert!((g - slice.project(&full)).norm() < 1e-14);
        assert!(PsdSliceBarrier::new(3, &[(0, 0), (1, 1)]).is_err());
    }

    #[test]
    fn side_lookup() {
        assert_eq!(side_from_len(6), Some(3));
        assert_eq!(side_from_len(5), None);
        assert_eq!(svec_index(3, 1, 2), 4);
        assert_eq!(svec_index(3, 2, 1), 4);
    }
}
