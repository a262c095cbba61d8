use serde::{Deserialize, Serialize};

use super::{LocalMetric, PairGeometry};
use crate::cones::Barrier;
use crate::error::Result;
use crate::linalg::{cholesky, congruence_by_inverse_factor, eigen, Matrix, Vector};

/// Tolerance for the membership booleans of a certificate.
pub const T_TOLERANCE: f64 = 1e-7;

/// Extreme eigenvalues of `T^2` relative to a reference operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichRange {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricCertificate {
    /// `|T^2 s - x|*_s / |x|*_s`
    pub maps_s_to_x_residual: f64,
    /// `|T^2 s~ - x~|_x / |x~|_x`
    pub maps_stilde_to_xtilde_residual: f64,
    /// Smallest `xi >= 1` for which this `T^2` satisfies the Hessian sandwich
    /// `mu / (xi c) F*''(s) <= T^2 <= (xi c / mu) F''(x)^-1`, `c = theta (mu mu~ - 1) + 1`.
    pub xi_estimate: f64,
    /// The `eta` the `T_2` flag was tested against.
    pub eta_level: f64,
    pub c_factor: f64,
    /// `T^2` against `mu F*''(s)`.
    pub dual_sandwich: SandwichRange,
    /// `T^2` against `F''(x)^-1 / mu`.
    pub primal_sandwich: SandwichRange,
    pub in_t0: bool,
    pub in_t1: bool,
    /// `T_1` membership with `xi_estimate <= eta`; since the optimal `xi`
    /// is at least one this is sufficient for `T_2(eta)`.
    pub in_t2: bool,
}

/// Eigenvalues of `m` relative to the positive-definite `reference`.
fn relative_range(m: &Matrix, reference: &Matrix) -> Result<SandwichRange> {
    let ev = eigen(&congruence_by_inverse_factor(m, reference)?).eigenvalues;
    Ok(SandwichRange {
        lower: ev.min(),
        upper: ev.max(),
    })
}

/// Eigenvalues of `m` relative to `h^-1`, i.e. those of `L^T m L` with `h = L L^T`.
fn range_against_inverse(m: &Matrix, h: &Matrix) -> Result<SandwichRange> {
    let chol = cholesky(h)?;
    let l = chol.l();
    let ev = eigen(&(l.transpose() * m * &l)).eigenvalues;
    Ok(SandwichRange {
        lower: ev.min(),
        upper: ev.max(),
    })
}

pub fn certify_with(m: &LocalMetric, g: &PairGeometry, eta: f64) -> Result<MetricCertificate> {
    let p = &g.pair;
    let rel = |num: f64, den: f64| if den > 0.0 { num / den } else { num };
    let r0 = rel(
        g.s_dual_norm(&(m.apply(&p.s) - &p.x))?,
        g.s_dual_norm(&p.x)?,
    );
    let r1 = rel(
        g.x_norm(&(m.apply(&p.stilde) - &p.xtilde)),
        g.x_norm(&p.xtilde),
    );
    let c = p.theta * (p.mu * p.mutilde - 1.0) + 1.0;
    let dual = relative_range(&m.t2, &(&g.dual_hessian * p.mu))?;
    let primal = range_against_inverse(&(&m.t2 * p.mu), &g.primal_hessian)?;
    let xi = 1f64.max(1.0 / (c * dual.lower)).max(primal.upper / c);
    let pd = dual.lower > 0.0;
    let in_t0 = pd && r0 <= T_TOLERANCE;
    let in_t1 = in_t0 && r1 <= T_TOLERANCE;
    Ok(MetricCertificate {
        maps_s_to_x_residual: r0,
        maps_stilde_to_xtilde_residual: r1,
        xi_estimate: xi,
        eta_level: eta,
        c_factor: c,
        dual_sandwich: dual,
        primal_sandwich: primal,
        in_t0,
        in_t1,
        in_t2: in_t1 && xi <= eta * (1.0 + T_TOLERANCE),
    })
}

pub fn certify_metric<P: Barrier + ?Sized, D: Barrier + ?Sized>(
    m: &LocalMetric,
    primal: &P,
    dual: &D,
    x: &Vector,
    s: &Vector,
    eta: f64,
) -> Result<MetricCertificate> {
    certify_with(m, &PairGeometry::new(primal, dual, x, s)?, eta)
}
