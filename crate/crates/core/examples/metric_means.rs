//! Every named metric for one pair on the positive semidefinite cone,
//! including the arithmetic, geometric and harmonic means.

use conic_metrics::cones::{BlockSpec, ProductCone};
use conic_metrics::linalg::Vector;
use conic_metrics::metrics::{build_metric, certify_with, MetricKind, PairGeometry};

fn main() -> conic_metrics::Result<()> {
    let cone = ProductCone::new(vec![BlockSpec::Psd { side: 2 }])?;
    let x = Vector::from_vec(vec![1.0, 0.1, 2.0]);
    let s = Vector::from_vec(vec![1.5, -0.2, 0.7]);
    let geometry = PairGeometry::new(&cone.primal, &cone.dual, &x, &s)?;
    println!("{:<18} {:>10} {:>6} {:>6}", "metric", "xi", "T_1", "T_2");
    for kind in MetricKind::ALL {
        let m = build_metric(kind, &cone, &geometry)?;
        let cert = certify_with(&m, &geometry, 4.0 / 3.0)?;
        println!("{:<18} {:>10.6} {:>6} {:>6}", format!("{kind:?}"), cert.xi_estimate, cert.in_t1, cert.in_t2);
    }
    Ok(())
}
