use serde::{Deserialize, Serialize};

use super::{
    combine_metrics, dual_integral_scaling, low_rank_update_two_step, midpoint_metric, nt_scaling,
    primal_integral_scaling, LocalMetric, MeanKind, PairGeometry,
};
use crate::cones::ProductCone;
use crate::error::Result;
use crate::quadrature::LineRule;

/// The metric constructions available by name; the means combine the dual
/// and primal integral scalings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    DualIntegral,
    PrimalIntegral,
    MidpointLowrank,
    Nt,
    ArithmeticMean,
    GeometricMean,
    HarmonicMean,
}

impl MetricKind {
    pub const ALL: [MetricKind; 7] = [
        Self::DualIntegral,
        Self::PrimalIntegral,
        Self::MidpointLowrank,
        Self::Nt,
        Self::ArithmeticMean,
        Self::GeometricMean,
        Self::HarmonicMean,
    ];
}

/// Builds the metric of the given kind for the pair in `geometry`.
pub fn build_metric(kind: MetricKind, cone: &ProductCone, geometry: &PairGeometry) -> Result<LocalMetric> {
    let p = &geometry.pair;
    let rule = LineRule::default();
    let dual = || dual_integral_scaling(&cone.dual, &p.s, &p.delta_d, p.mu, &rule);
    let primal = || primal_integral_scaling(&cone.primal, &p.x, &p.delta_p, p.mu, &rule);
    let mean = |mode| -> Result<LocalMetric> {
        Ok(combine_metrics(&dual()?, &primal()?, mode, geometry, 1.0)?.0)
    };
    match kind {
        MetricKind::DualIntegral => dual(),
        MetricKind::PrimalIntegral => primal(),
        MetricKind::MidpointLowrank => {
            low_rank_update_two_step(&midpoint_metric(&cone.dual, &p.s, &p.stilde, p.mu)?, p)
        }
        MetricKind::Nt => nt_scaling(cone, p),
        MetricKind::ArithmeticMean => mean(MeanKind::Arithmetic),
        MetricKind::GeometricMean => mean(MeanKind::Geometric),
        MetricKind::HarmonicMean => mean(MeanKind::Harmonic),
    }
}
