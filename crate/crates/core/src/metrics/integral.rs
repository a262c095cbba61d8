use super::{LocalMetric, Provenance};
use crate::cones::Barrier;
use crate::error::{Error, Result};
use crate::linalg::{spd_inverse, Vector};
use crate::quadrature::LineRule;

/// `T_D^2 = mu int_0^1 F*''(s - t delta_D) dt`.
pub fn dual_integral_scaling<D: Barrier + ?Sized>(
    dual: &D,
    s: &Vector,
    delta_d: &Vector,
    mu: f64,
    rule: &LineRule,
) -> Result<LocalMetric> {
    let integral = dual.hessian_line_integral(s, delta_d, rule)?;
    LocalMetric::new(integral * mu, Provenance::DualIntegral)
}

/// `T_P^2 = (mu int_0^1 F''(x - t delta_P) dt)^-1`.
pub fn primal_integral_scaling<P: Barrier + ?Sized>(
    primal: &P,
    x: &Vector,
    delta_p: &Vector,
    mu: f64,
    rule: &LineRule,
) -> Result<LocalMetric> {
    let integral = primal.hessian_line_integral(x, delta_p, rule)?;
    let t2 = spd_inverse(&(integral * mu)).map_err(|e| {
        Error::NumericalBreakdown(format!("primal integral is not invertible: {e}"))
    })?;
    LocalMetric::new(t2, Provenance::PrimalIntegral)
}

/// `H = mu F*''((s + mu s~) / 2)`.
pub fn midpoint_metric<D: Barrier + ?Sized>(
    dual: &D,
    s: &Vector,
    stilde: &Vector,
    mu: f64,
) -> Result<LocalMetric> {
    let mid = (s + stilde * mu) * 0.5;
    LocalMetric::new(dual.hessian(&mid)? * mu, Provenance::Custom)
}
