//! Primal-dual local metrics `T^2`: self-adjoint positive-definite operators
//! from the dual space to the primal space with `T^2 s = x`.

mod certify;
mod integral;
mod kind;
mod lowrank;
mod means;
mod nt;

pub use certify::{certify_metric, certify_with, MetricCertificate, SandwichRange, T_TOLERANCE};
pub use integral::{dual_integral_scaling, midpoint_metric, primal_integral_scaling};
pub use kind::{build_metric, MetricKind};
pub use lowrank::{
    low_rank_update_bfgs_form, low_rank_update_direct, low_rank_update_two_step, two_step_parts,
    TwoStepUpdate,
};
pub use means::{combine_metrics, operator_geometric_mean, MeanKind};
pub use nt::nt_scaling;

use serde::{Deserialize, Serialize};

use crate::cones::Barrier;
use crate::error::{Error, Result};
use crate::linalg::{
    cholesky, local_operator_norm, quad_form, relative_frobenius, spd_sqrt, symmetrize, Matrix,
    Vector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    DualIntegral,
    PrimalIntegral,
    MidpointLowRank,
    NtGeodesic,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalMetric {
    pub t2: Matrix,
    /// `T`, once materialized by [`metric_sqrt`].
    pub sqrt: Option<Matrix>,
    pub provenance: Provenance,
}

impl LocalMetric {
    /// Symmetrizes `t2` and checks positive definiteness.
    pub fn new(t2: Matrix, provenance: Provenance) -> Result<Self> {
        if !t2.is_square() {
            return Err(Error::DimensionMismatch {
                expected: t2.nrows(),
                got: t2.ncols(),
            });
        }
        if t2.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalBreakdown("non-finite metric entry".into()));
        }
        let t2 = symmetrize(&t2);
        cholesky(&t2)?;
        Ok(Self {
            t2,
            sqrt: None,
            provenance,
        })
    }

    pub fn dim(&self) -> usize {
        self.t2.nrows()
    }

    pub fn apply(&self, s: &Vector) -> Vector {
        &self.t2 * s
    }
}

/// Materializes `T` by symmetric eigendecomposition.
pub fn metric_sqrt(m: &LocalMetric) -> Result<LocalMetric> {
    let t = spd_sqrt(&m.t2)?;
    let err = relative_frobenius(&(&t * &t), &m.t2);
    if err > 1e-10 {
        return Err(Error::NumericalBreakdown(format!(
            "square root round trip error {err:e}"
        )));
    }
    Ok(LocalMetric {
        t2: m.t2.clone(),
        sqrt: Some(t),
        provenance: m.provenance,
    })
}

/// A primal-dual pair with its shadow iterates `x~ = -F*'(s)`, `s~ = -F'(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadowPair {
    pub x: Vector,
    pub s: Vector,
    pub xtilde: Vector,
    pub stilde: Vector,
    pub theta: f64,
    pub mu: f64,
    pub mutilde: f64,
    pub delta_p: Vector,
    pub delta_d: Vector,
    pub gamma_g: f64,
}

impl ShadowPair {
    pub fn new<P: Barrier + ?Sized, D: Barrier + ?Sized>(
        primal: &P,
        dual: &D,
        x: &Vector,
        s: &Vector,
    ) -> Result<Self> {
        let stilde = -primal.gradient(x)?;
        let xtilde = -dual.gradient(s)?;
        Ok(Self::from_parts(
            x.clone(),
            s.clone(),
            xtilde,
            stilde,
            primal.theta(),
        ))
    }

    pub fn from_parts(x: Vector, s: Vector, xtilde: Vector, stilde: Vector, theta: f64) -> Self {
        let mu = s.dot(&x) / theta;
        let mutilde = stilde.dot(&xtilde) / theta;
        let delta_p = &x - &xtilde * mu;
        let delta_d = &s - &stilde * mu;
        Self {
            gamma_g: theta * (mu * mutilde - 1.0),
            x,
            s,
            xtilde,
            stilde,
            theta,
            mu,
            mutilde,
            delta_p,
            delta_d,
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `<delta_D, delta_P>`, equal to `mu gamma_G` for a consistent pair.
    pub fn curvature(&self) -> f64 {
        self.delta_d.dot(&self.delta_p)
    }
}

/// A shadow pair together with the Hessians that define its local norms.
#[derive(Debug, Clone)]
pub struct PairGeometry {
    pub pair: ShadowPair,
    /// `F*''(s)`
    pub dual_hessian: Matrix,
    /// `F''(x)`
    pub primal_hessian: Matrix,
}

impl PairGeometry {
    pub fn new<P: Barrier + ?Sized, D: Barrier + ?Sized>(
        primal: &P,
        dual: &D,
        x: &Vector,
        s: &Vector,
    ) -> Result<Self> {
        Ok(Self {
            pair: ShadowPair::new(primal, dual, x, s)?,
            dual_hessian: dual.hessian(s)?,
            primal_hessian: primal.hessian(x)?,
        })
    }

    /// `|h|_s` for a dual vector `h`.
    pub fn s_norm(&self, h: &Vector) -> f64 {
        quad_form(&self.dual_hessian, h).max(0.0).sqrt()
    }

    /// `|u|*_s` for a primal vector `u`.
    pub fn s_dual_norm(&self, u: &Vector) -> Result<f64> {
        Ok(u.dot(&cholesky(&self.dual_hessian)?.solve(u)).max(0.0).sqrt())
    }

    /// `|u|_x` for a primal vector `u`.
    pub fn x_norm(&self, u: &Vector) -> f64 {
        quad_form(&self.primal_hessian, u).max(0.0).sqrt()
    }

    /// `sup { |M u|*_s : |u|_s <= 1 }` for `M` from the dual to the primal space.
    pub fn operator_norm_s(&self, m: &Matrix) -> Result<f64> {
        local_operator_norm(m, &self.dual_hessian)
    }

    /// `|delta_D|_s`
    pub fn neighbourhood(&self) -> f64 {
        self.s_norm(&self.pair.delta_d)
    }
}
