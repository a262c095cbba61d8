use super::{certify_with, LocalMetric, MetricCertificate, PairGeometry, Provenance};
use crate::error::{Error, Result};
use crate::linalg::{spd_inverse, spd_pow, symmetrize, Matrix};

/// `A # B = A^(1/2) (A^(-1/2) B A^(-1/2))^(1/2) A^(1/2)`, the unique positive
/// definite `G` with `G A^-1 G = B`.
pub fn operator_geometric_mean(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    let half = spd_pow(a, 0.5)?;
    let inv_half = spd_pow(a, -0.5)?;
    let inner = spd_pow(&symmetrize(&(&inv_half * b * &inv_half)), 0.5)?;
    Ok(symmetrize(&(&half * inner * &half)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanKind {
    Arithmetic,
    Harmonic,
    Geometric,
}

/// Combines two metrics for the same pair and certifies the result.
///
/// Fails if the result leaves a class (`T_0` or `T_1`) both inputs belong to.
pub fn combine_metrics(
    a: &LocalMetric,
    b: &LocalMetric,
    mode: MeanKind,
    geometry: &PairGeometry,
    eta: f64,
) -> Result<(LocalMetric, MetricCertificate)> {
    let t2 = match mode {
        MeanKind::Arithmetic => (&a.t2 + &b.t2) * 0.5,
        MeanKind::Harmonic => spd_inverse(&((spd_inverse(&a.t2)? + spd_inverse(&b.t2)?) * 0.5))?,
        MeanKind::Geometric => operator_geometric_mean(&a.t2, &b.t2)?,
    };
    let provenance = if a.provenance == b.provenance {
        a.provenance
    } else {
        Provenance::Custom
    };
    let combined = LocalMetric::new(t2, provenance)?;
    let cert = certify_with(&combined, geometry, eta)?;
    let ca = certify_with(a, geometry, eta)?;
    let cb = certify_with(b, geometry, eta)?;
    if (ca.in_t0 && cb.in_t0 && !cert.in_t0) || (ca.in_t1 && cb.in_t1 && !cert.in_t1) {
        return Err(Error::NumericalBreakdown(format!(
            "mean lost membership: s residual {:e}, s~ residual {:e}",
            cert.maps_s_to_x_residual, cert.maps_stilde_to_xtilde_residual
        )));
    }
    Ok((combined, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;

    #[test]
    fn commuting_geometric_mean() {
        let a = Matrix::from_diagonal(&Vector::from_vec(vec![1.0, 4.0]));
        let b = Matrix::from_diagonal(&Vector::from_vec(vec![4.0, 1.0]));
        let g = operator_geometric_mean(&a, &b).unwrap();
        assert!((g - Matrix::identity(2, 2) * 2.0).norm() < 1e-14);
        let same = operator_geometric_mean(&a, &a).unwrap();
        assert!((same - a).norm() < 1e-14);
    }

    #[test]
    fn riccati_identity() {
        let a = Matrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]);
        let b = Matrix::from_row_slice(2, 2, &[1.0, -0.3, -0.3, 3.0]);
        let g = operator_geometric_mean(&a, &b).unwrap();
        let lhs = &g * a.clone().try_inverse().unwrap() * &g;
        assert!((lhs - &b).norm() < 1e-12 * b.norm());
    }
}
