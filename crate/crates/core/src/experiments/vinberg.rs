use serde::Serialize;

use crate::cones::{Barrier, PsdSliceBarrier};
use crate::conjugate::conjugate_newton;
use crate::error::{Error, Result};
use crate::linalg::{cholesky, Matrix, Vector};

/// `3 x 3` symmetric matrices with `(2,3)` and `(3,2)` entries zero (1-based).
pub fn vinberg_slice() -> PsdSliceBarrier {
    PsdSliceBarrier::new(3, &[(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)])
        .expect("the Vinberg pattern contains the diagonal")
}

fn full_psd3() -> PsdSliceBarrier {
    PsdSliceBarrier::new(3, &[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)])
        .expect("full pattern")
}

/// `B = E12 + E21 + E13 + E31`: trace zero, inside the slice, with `B^2` outside it.
fn perturbation() -> Matrix {
    Matrix::from_row_slice(3, 3, &[0.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0])
}

#[derive(Debug, Clone, Serialize)]
pub struct VinbergRow {
    pub epsilon: f64,
    /// `|F''(W)[X] - S|` at the minimizing `W`.
    pub first_residual: f64,
    /// `|F''(W)[-F*'(S)] + F'(X)|` at that `W`.
    pub second_residual: f64,
    pub second_over_eps_squared: f64,
    /// The same two residuals over the full `3 x 3` cone.
    pub control_first: f64,
    pub control_second: f64,
    pub iterations: usize,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VinbergReport {
    pub rows: Vec<VinbergRow>,
    /// Least-squares slope of `ln(second residual)` against `ln(epsilon)`.
    pub slope: f64,
}

struct Witness {
    w: Vector,
    first: f64,
    second: f64,
    iterations: usize,
}

/// `F''(W)[X] - S` over the slice and its Jacobian in `W`.
fn first_condition(slice: &PsdSliceBarrier, w: &Vector, x: &Vector, s: &Vector) -> Result<(Vector, Matrix)> {
    let winv = slice
        .to_matrix(w)
        .try_inverse()
        .ok_or_else(|| Error::NumericalBreakdown("W is singular".into()))?;
    let xm = slice.to_matrix(x);
    let wxw = &winv * &xm * &winv;
    let r = slice.from_matrix(&wxw) - s;
    let k = slice.dim();
    let mut jac = Matrix::zeros(k, k);
    let mut basis = Vector::zeros(k);
    for col in 0..k {
        basis[col] = 1.0;
        let h = &winv * slice.to_matrix(&basis) * &winv;
        jac.set_column(col, &-slice.from_matrix(&(&h * &xm * &winv + &wxw * slice.to_matrix(&basis) * &winv)));
        basis[col] = 0.0;
    }
    Ok((r, jac))
}

/// Levenberg-Marquardt on the first residual, kept inside the cone by backtracking.
fn minimize_first(slice: &PsdSliceBarrier, x: &Vector, s: &Vector, w0: &Vector) -> Result<(Vector, f64, usize)> {
    let mut w = w0.clone();
    let (mut r, mut jac) = first_condition(slice, &w, x, s)?;
    let mut lambda = 1e-3;
    let k = slice.dim();
    for iter in 0..500 {
        if r.norm() < 1e-14 {
            return Ok((w, r.norm(), iter));
        }
        let normal = jac.transpose() * &jac;
        let scale = normal.diagonal().max().max(1.0);
        let system = &normal + Matrix::identity(k, k) * (lambda * scale);
        let step = cholesky(&system)?.solve(&-(jac.transpose() * &r));
        let candidate = &w + &step;
        let accepted = slice.is_interior(&candidate)
            && match first_condition(slice, &candidate, x, s) {
                Ok((rc, jc)) if rc.norm() < r.norm() => {
                    w = candidate;
                    r = rc;
                    jac = jc;
                    true
                }
                _ => false,
            };
        if accepted {
            lambda = (lambda / 3.0).max(1e-15);
        } else {
            lambda *= 4.0;
            if lambda > 1e12 {
                return Ok((w, r.norm(), iter));
            }
        }
    }
    Ok((w, r.norm(), 500))
}

fn witness(slice: &PsdSliceBarrier, xm: &Matrix, w0: &Matrix) -> Result<Witness> {
    let x = slice.from_matrix(xm);
    let s = x.clone();
    let (w, first, iterations) = minimize_first(slice, &x, &s, &slice.from_matrix(w0))?;
    // x~ = -F*'(S)
    let conj = conjugate_newton(slice, &s, &slice.from_matrix(&Matrix::identity(3, 3)), 1e-14, 100)?;
    if !conj.converged {
        return Err(Error::NonConvergence {
            iterations: conj.iterations,
            residual: conj.residual_norm,
        });
    }
    let second = (slice.hessian(&w)? * &conj.xhat + slice.gradient(&x)?).norm();
    Ok(Witness {
        w,
        first,
        second,
        iterations,
    })
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

/// For each `epsilon`, `X = S = I + epsilon B`: finds `W` with `F''(W)[X] = S`
/// over the slice and measures how far `F''(W)[-F*'(S)] = -F'(X)` is from holding.
pub fn vinberg_experiment(epsilons: &[f64]) -> Result<VinbergReport> {
    let slice = vinberg_slice();
    let control = full_psd3();
    // a start away from the obvious root W = I
    let w0 = Matrix::from_row_slice(3, 3, &[1.3, 0.2, -0.1, 0.2, 0.8, 0.0, -0.1, 0.0, 1.1]);
    let mut rows = Vec::new();
    for &epsilon in epsilons {
        if !(epsilon.abs() < 0.5) {
            return Err(Error::Invalid(format!("epsilon must satisfy |epsilon| < 0.5, got {epsilon}")));
        }
        let xm = Matrix::identity(3, 3) + perturbation() * epsilon;
        let main = witness(&slice, &xm, &w0)?;
        let ctrl = witness(&control, &xm, &w0)?;
        rows.push(VinbergRow {
            epsilon,
            first_residual: main.first,
            second_residual: main.second,
            second_over_eps_squared: if epsilon == 0.0 {
                0.0
            } else {
                main.second / (epsilon * epsilon)
            },
            control_first: ctrl.first,
            control_second: ctrl.second,
            iterations: main.iterations,
            w: slice.to_matrix(&main.w).iter().copied().collect(),
        });
    }
    let (lx, ly): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.epsilon != 0.0 && r.second_residual > 0.0)
        .map(|r| (r.epsilon.abs().ln(), r.second_residual.ln()))
        .unzip();
    let slope = if lx.len() >= 2 { slope(&lx, &ly) } else { f64::NAN };
    Ok(VinbergReport { rows, slope })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_point_satisfies_both() {
        let r = vinberg_experiment(&[0.0]).unwrap();
        assert!(r.rows[0].first_residual < 1e-12);
        assert!(r.rows[0].second_residual < 1e-10);
    }

    #[test]
    fn slice_breaks_second_condition() {
        let r = vinberg_experiment(&[0.1, 0.05, 0.01]).unwrap();
        for row in &r.rows {
            assert!(row.first_residual < 1e-8);
            assert!(row.second_residual > 1e3 * row.first_residual.max(1e-12));
            assert!(row.control_first < 1e-8 && row.control_second < 1e-9);
        }
        // series expansion at W = I: the residual is Pi_L(2B^3 - B C - C B) eps^3 + O(eps^4)
        // with C = Pi_L(B^2), which equals B eps^3, of norm 2 eps^3
        let small = r.rows.last().unwrap();
        assert!((small.second_residual / (2.0 * 0.01f64.powi(3)) - 1.0).abs() < 0.05);
        assert!((r.slope - 3.0).abs() < 0.1, "slope {}", r.slope);
    }
}
