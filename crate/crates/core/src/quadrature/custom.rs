//! Gaussian rules for the weight `1 / p(x - t delta)^2` on `[0, 1]`.
//!
//! Moments are taken against monic shifted Legendre polynomials rather than
//! monomials; the modified Chebyshev algorithm turns them into the three-term
//! recurrence of the orthogonal polynomials for the weight, and the Jacobi
//! matrix eigenvalues give the nodes.

use super::{adaptive_integral, golub_welsch, legendre_recurrence, QuadratureRule, WeightFunction};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::polynomial::Polynomial;

const MOMENT_TOL: f64 = 1e-13;
const MOMENT_MAX_PANELS: usize = 4096;

/// Values of the monic shifted Legendre polynomials `pi_0 .. pi_{count-1}` at `t`.
fn legendre_values(t: f64, count: usize, out: &mut [f64]) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for (l, slot) in out.iter_mut().enumerate().take(count) {
        *slot = cur;
        let (a, b) = legendre_recurrence(l);
        let next = (t - a) * cur - if l == 0 { 0.0 } else { b * prev };
        prev = cur;
        cur = next;
    }
}

/// `m_l = int_0^1 pi_l(t) w(t) dt` for `l < count`, each to relative accuracy
/// `1e-13` measured against `int |pi_l| w`.
fn modified_moments<W: Fn(f64) -> f64>(weight: &W, count: usize) -> Result<Vec<f64>> {
    let mut moments = Vec::with_capacity(count);
    let mut vals = vec![0.0; count];
    for l in 0..count {
        let scale = adaptive_integral(
            |t| {
                legendre_values(t, l + 1, &mut vals);
                vals[l].abs() * weight(t)
            },
            1e-6,
            MOMENT_MAX_PANELS,
        )?;
        let mut panels = 1;
        let mut prev = super::composite(panels, |t| Ok(pi_weight(t, l, weight)), 0.0)?;
        loop {
            panels *= 2;
            let next = super::composite(panels, |t| Ok(pi_weight(t, l, weight)), 0.0)?;
            if (next - prev).abs() <= MOMENT_TOL * scale {
                moments.push(next);
                break;
            }
            if panels >= MOMENT_MAX_PANELS {
                return Err(Error::NonConvergence {
                    iterations: panels,
                    residual: (next - prev).abs() / scale,
                });
            }
            prev = next;
        }
    }
    Ok(moments)
}

fn pi_weight<W: Fn(f64) -> f64>(t: f64, l: usize, weight: &W) -> f64 {
    let mut vals = vec![0.0; l + 1];
    legendre_values(t, l + 1, &mut vals);
    vals[l] * weight(t)
}

/// Gaussian rule with `order` nodes for a positive weight on `[0, 1]`.
pub fn rule_from_weight<W: Fn(f64) -> f64>(
    weight: W,
    order: usize,
    weight_function: WeightFunction,
) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Invalid("rule order must be positive".into()));
    }
    let m = modified_moments(&weight, 2 * order)?;
    if !(m[0] > 0.0) {
        return Err(Error::Domain("weight has no positive mass".into()));
    }
    let n = order;
    let recur: Vec<(f64, f64)> = (0..2 * n).map(legendre_recurrence).collect();
    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n];
    // sigma[k][l] for the current and previous two rows
    let mut sig_prev = vec![0.0; 2 * n];
    let mut sig_cur = m.clone();
    alpha[0] = recur[0].0 + m[1] / m[0];
    beta[0] = m[0];
    for k in 1..n {
        let mut sig_next = vec![0.0; 2 * n];
        for l in k..(2 * n - k) {
            sig_next[l] = sig_cur[l + 1] - (alpha[k - 1] - recur[l].0) * sig_cur[l]
                - beta[k - 1] * sig_prev[l]
                + recur[l].1 * sig_cur[l - 1];
        }
        if !(sig_next[k] > 0.0) {
            return Err(Error::IllConditioned(format!(
                "modified Chebyshev breakdown at order {k}; higher working precision needed"
            )));
        }
        alpha[k] =
            recur[k].0 + sig_next[k + 1] / sig_next[k] - sig_cur[k] / sig_cur[k - 1];
        beta[k] = sig_next[k] / sig_cur[k - 1];
        sig_prev = sig_cur;
        sig_cur = sig_next;
    }
    let (nodes, weights) = golub_welsch(&alpha, &beta)?;
    if nodes.iter().any(|&t| !(t > 0.0 && t < 1.0)) || weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::IllConditioned(
            "computed rule has nodes outside (0, 1) or nonpositive weights".into(),
        ));
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        weight_function,
        order,
    })
}

/// The `order`-node Gaussian rule for the weight `1 / p(x - t delta)^2`.
pub fn build_custom_rule(
    p: &Polynomial,
    x: &Vector,
    delta: &Vector,
    order: usize,
) -> Result<QuadratureRule> {
    let r = p.restrict(x, &-delta);
    // the weight must be finite on [0, 1]; sample densely before integrating
    let samples = 257;
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        if !(r.eval(t) > 0.0) {
            return Err(Error::Domain(format!(
                "p(x - t delta) is not positive at t = {t}"
            )));
        }
    }
    rule_from_weight(
        |t| {
            let v = r.eval(t);
            1.0 / (v * v)
        },
        order,
        WeightFunction::InversePSquared {
            base: x.clone(),
            delta: delta.clone(),
        },
    )
}
