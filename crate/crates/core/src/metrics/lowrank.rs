//! Rank-two corrections that make an arbitrary positive-definite `H` map
//! `s -> x` and `s~ -> x~`.

use super::{LocalMetric, Provenance, ShadowPair};
use crate::error::{Error, Result};
use crate::linalg::{quad_form, symmetrize, Matrix};

/// Below this multiple of `theta mu`, `<delta_D, delta_P>` is treated as zero
/// and the second update is skipped.
const DEGENERATE_CURVATURE: f64 = 1e-14;

/// Threshold on `mu mu~ - 1` below which the single-formula update is singular.
const DIRECT_SINGULARITY: f64 = 1e-12;

fn check_primary_curvature(pair: &ShadowPair, h: &Matrix) -> Result<(f64, f64)> {
    let sx = pair.s.dot(&pair.x);
    if !(sx > 0.0) {
        return Err(Error::Curvature {
            which: "<s, x>",
            value: sx,
        });
    }
    let shs = quad_form(h, &pair.s);
    if !(shs > 0.0) {
        return Err(Error::Curvature {
            which: "<s, Hs>",
            value: shs,
        });
    }
    Ok((sx, shs))
}

/// `None` when the pair is central to rounding, so the second update is skipped.
fn secondary_curvature(pair: &ShadowPair) -> Result<Option<f64>> {
    let c = pair.curvature();
    let floor = DEGENERATE_CURVATURE * pair.theta * pair.mu.abs();
    if c > floor {
        Ok(Some(c))
    } else if c >= -floor {
        Ok(None)
    } else {
        Err(Error::Curvature {
            which: "<delta_D, delta_P>",
            value: c,
        })
    }
}

/// The two consecutive updates `H -> H_1 -> H_2` kept apart for analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStepUpdate {
    pub h1: Matrix,
    pub h2: Matrix,
    /// `H_1 - H`
    pub first: Matrix,
    /// `H_2 - H_1`; zero when the second update was skipped.
    pub second: Matrix,
    pub second_skipped: bool,
}

/// `H_1 = H + x x^T / <s,x> - H s s^T H / <s,Hs>` followed by
/// `H_2 = H_1 + dP dP^T / <dD,dP> - H_1 dD dD^T H_1 / <dD,H_1 dD>`.
pub fn two_step_parts(h: &Matrix, pair: &ShadowPair) -> Result<TwoStepUpdate> {
    let (sx, shs) = check_primary_curvature(pair, h)?;
    let hs = h * &pair.s;
    let first = &pair.x * pair.x.transpose() / sx - &hs * hs.transpose() / shs;
    let h1 = h + &first;
    let n = h.nrows();
    let (second, skipped) = match secondary_curvature(pair)? {
        None => (Matrix::zeros(n, n), true),
        Some(c) => {
            let hd = &h1 * &pair.delta_d;
            let dhd = pair.delta_d.dot(&hd);
            if !(dhd > 0.0) {
                return Err(Error::Curvature {
                    which: "<delta_D, H_1 delta_D>",
                    value: dhd,
                });
            }
            (
                &pair.delta_p * pair.delta_p.transpose() / c - &hd * hd.transpose() / dhd,
                false,
            )
        }
    };
    let h2 = symmetrize(&(&h1 + &second));
    Ok(TwoStepUpdate {
        h1,
        h2,
        first,
        second,
        second_skipped: skipped,
    })
}

pub fn low_rank_update_two_step(h: &LocalMetric, pair: &ShadowPair) -> Result<LocalMetric> {
    let parts = two_step_parts(&h.t2, pair)?;
    LocalMetric::new(parts.h2, Provenance::MidpointLowRank)
}

/// `(I - a b^T / c) M (I - b a^T / c) + a a^T / c`
fn bfgs_step(m: &Matrix, a: &crate::linalg::Vector, b: &crate::linalg::Vector, c: f64) -> Matrix {
    let n = m.nrows();
    let left = Matrix::identity(n, n) - a * b.transpose() / c;
    symmetrize(&(&left * m * left.transpose() + a * a.transpose() / c))
}

/// The same two corrections in product form, first with `(x, s)` then with
/// `(delta_P, delta_D)`.
pub fn low_rank_update_bfgs_form(h: &LocalMetric, pair: &ShadowPair) -> Result<LocalMetric> {
    let (sx, _) = check_primary_curvature(pair, &h.t2)?;
    let h1 = bfgs_step(&h.t2, &pair.x, &pair.s, sx);
    let h2 = match secondary_curvature(pair)? {
        None => h1,
        Some(c) => bfgs_step(&h1, &pair.delta_p, &pair.delta_d, c),
    };
    LocalMetric::new(h2, Provenance::MidpointLowRank)
}

/// The single-formula update
/// `H + a1 x x^T + a1~ x~ x~^T + a2 (x x~^T + x~ x^T) - [Hs Hs~] G^-1 [Hs Hs~]^T`
/// with `G` the Gram matrix of `s, s~` under `H`.
pub fn low_rank_update_direct(h: &LocalMetric, pair: &ShadowPair) -> Result<LocalMetric> {
    let gap = pair.mu * pair.mutilde - 1.0;
    if gap < DIRECT_SINGULARITY {
        return Err(Error::Singular { gap });
    }
    let h = &h.t2;
    let denom = pair.theta * gap;
    let a1 = pair.mutilde / denom;
    let a1t = pair.mu / denom;
    let a2 = -1.0 / denom;
    let hs = h * &pair.s;
    let hst = h * &pair.stilde;
    let shs = pair.s.dot(&hs);
    let sths = pair.stilde.dot(&hst);
    let cross = pair.s.dot(&hst);
    let det = shs * sths - cross * cross;
    if !(det > 0.0) {
        return Err(Error::Singular { gap: det });
    }
    let g1 = sths / det;
    let g1t = shs / det;
    let g2 = cross / det;
    let x = &pair.x;
    let xt = &pair.xtilde;
    let t2 = h + x * x.transpose() * a1 + xt * xt.transpose() * a1t
        + (x * xt.transpose() + xt * x.transpose()) * a2
        - &hs * hs.transpose() * g1
        - &hst * hst.transpose() * g1t
        + (&hs * hst.transpose() + &hst * hs.transpose()) * g2;
    LocalMetric::new(t2, Provenance::MidpointLowRank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{Barrier, OrthantBarrier};
    use crate::linalg::Vector;

    fn lp_pair() -> ShadowPair {
        ShadowPair::new(
            &OrthantBarrier::new(2),
            &OrthantBarrier::conjugate(2),
            &Vector::from_vec(vec![1.0, 1.0]),
            &Vector::from_vec(vec![2.0, 1.0]),
        )
        .unwrap()
    }

    fn identity() -> LocalMetric {
        LocalMetric::new(Matrix::identity(2, 2), Provenance::Custom).unwrap()
    }

    #[test]
    fn all_forms_map_s_and_stilde() {
        let pair = lp_pair();
        let h = identity();
        let parts = two_step_parts(&h.t2, &pair).unwrap();
        assert!((&parts.h1 * &pair.s - &pair.x).norm() < 1e-15);
        for m in [
            low_rank_update_two_step(&h, &pair).unwrap(),
            low_rank_update_bfgs_form(&h, &pair).unwrap(),
            low_rank_update_direct(&h, &pair).unwrap(),
        ] {
            assert!((m.apply(&pair.s) - &pair.x).norm() < 1e-12);
            assert!((m.apply(&pair.stilde) - &pair.xtilde).norm() < 1e-12);
        }
    }

    #[test]
    fn central_pair_skips_second_update() {
        let b = OrthantBarrier::new(2);
        let x = Vector::from_vec(vec![1.0, 2.0]);
        let s = -b.gradient(&x).unwrap() * 0.7;
        let pair = ShadowPair::new(&b, &OrthantBarrier::conjugate(2), &x, &s).unwrap();
        let parts = two_step_parts(&Matrix::identity(2, 2), &pair).unwrap();
        assert!(parts.second_skipped);
        assert_eq!(parts.h1, parts.h2);
        assert!(matches!(
            low_rank_update_direct(&identity(), &pair),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn negative_curvature_is_rejected() {
        let mut pair = lp_pair();
        pair.delta_p = -&pair.delta_p;
        assert!(matches!(
            two_step_parts(&Matrix::identity(2, 2), &pair),
            Err(Error::Curvature { which: "<delta_D, delta_P>", .. })
        ));
        let mut flipped = lp_pair();
        flipped.x = -&flipped.x;
        assert!(matches!(
            low_rank_update_bfgs_form(&identity(), &flipped),
            Err(Error::Curvature { which: "<s, x>", .. })
        ));
    }
}
