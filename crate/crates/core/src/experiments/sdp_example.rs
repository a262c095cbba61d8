use serde::Serialize;

use crate::cones::psd::{svec, svec_index};
use crate::cones::{BlockSpec, ProductCone};
use crate::error::{Error, Result};
use crate::linalg::{numerical_rank, Matrix, Vector};
use crate::metrics::{dual_integral_scaling, nt_scaling, ShadowPair};
use crate::quadrature::LineRule;

/// `mu (ln d_j - ln d_i) / (d_j - d_i)`, or `mu / d_i` when `d_i == d_j`.
pub fn integral_entry(mu: f64, di: f64, dj: f64) -> f64 {
    if di == dj {
        mu / di
    } else {
        mu * (dj.ln() - di.ln()) / (dj - di)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SdpExampleReport {
    pub epsilon: f64,
    pub n: usize,
    /// `mu` of the pair `X = diag(1/eps^i)`, `S = I`.
    pub mu: f64,
    /// Eigenvalues of `mu X~` relative to `S = I`, proportional to `(eps, ..., eps^n)`.
    pub d: Vec<f64>,
    /// `T_D^2[E_ij, E_ij]` read off the computed dual integral scaling.
    pub integral_entries: Vec<Vec<f64>>,
    /// The same entries from the closed-form log divided differences.
    pub integral_formula: Vec<Vec<f64>>,
    /// `T^2[E_ij, E_ij]` of the Nesterov-Todd scaling.
    pub nt_entries: Vec<Vec<f64>>,
    pub integral_rank: usize,
    pub nt_rank: usize,
    /// Largest relative deviation between computed and closed-form entries.
    pub formula_deviation: f64,
    /// Largest relative deviation of the computed diagonal from `mu / d_i`.
    pub diagonal_deviation: f64,
}

fn entry_matrix(t2: &Matrix, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        let k = svec_index(n, i, j);
        t2[(k, k)]
    })
}

fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// Builds the diagonal pair and compares the integral and NT entry matrices.
pub fn sdp_example(epsilon: f64, n: usize) -> Result<SdpExampleReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    let base: Vec<f64> = (1..=n).map(|i| epsilon.powi(i as i32)).collect();
    let cone = ProductCone::new(vec![BlockSpec::Psd { side: n }])?;
    let x = svec(&Matrix::from_diagonal(&Vector::from_iterator(
        n,
        base.iter().map(|d| 1.0 / d),
    )));
    let s = svec(&Matrix::identity(n, n));
    let pair = ShadowPair::new(&cone.primal, &cone.dual, &x, &s)?;
    let mu = pair.mu;
    let d: Vec<f64> = base.iter().map(|b| mu * b).collect();

    let integral = dual_integral_scaling(&cone.dual, &s, &pair.delta_d, mu, &LineRule::default())?;
    let integral_entries = entry_matrix(&integral.t2, n);
    let integral_formula = Matrix::from_fn(n, n, |i, j| integral_entry(mu, d[i], d[j]));
    let nt = nt_scaling(&cone, &pair)?;
    let nt_entries = entry_matrix(&nt.t2, n);

    let formula_deviation = integral_entries
        .iter()
        .zip(integral_formula.iter())
        .map(|(a, b)| (a - b).abs() / b.abs())
        .fold(0.0, f64::max);
    let diagonal_deviation = (0..n)
        .map(|i| (integral_entries[(i, i)] - mu / d[i]).abs() / (mu / d[i]))
        .fold(0.0, f64::max);

    Ok(SdpExampleReport {
        epsilon,
        n,
        mu,
        d,
        integral_rank: numerical_rank(&integral_entries, 1e-10),
        nt_rank: numerical_rank(&nt_entries, 1e-10),
        integral_entries: rows(&integral_entries),
        integral_formula: rows(&integral_formula),
        nt_entries: rows(&nt_entries),
        formula_deviation,
        diagonal_deviation,
    })
}
