//! Dual and primal integral scalings for a pair on a second-order cone, with
//! their certificates.

use conic_metrics::cones::{BlockSpec, ProductCone};
use conic_metrics::linalg::Vector;
use conic_metrics::metrics::{build_metric, certify_with, MetricKind, PairGeometry};

fn main() -> conic_metrics::Result<()> {
    let cone = ProductCone::new(vec![BlockSpec::Soc { dim: 3 }])?;
    let x = Vector::from_vec(vec![2.0, 0.5, -0.3]);
    let s = Vector::from_vec(vec![1.5, -0.2, 0.4]);
    let geometry = PairGeometry::new(&cone.primal, &cone.dual, &x, &s)?;
    let p = &geometry.pair;
    println!("mu = {:.6}, mu~ = {:.6}, |delta_D|_s = {:.6}", p.mu, p.mutilde, geometry.neighbourhood());
    for kind in [MetricKind::DualIntegral, MetricKind::PrimalIntegral] {
        let m = build_metric(kind, &cone, &geometry)?;
        let cert = certify_with(&m, &geometry, 1.237483)?;
        println!("{kind:?}");
        println!("  T^2 s - x      = {:.2e}", (m.apply(&p.s) - &p.x).norm());
        println!("  T^2 s~ - x~    = {:.2e}", (m.apply(&p.stilde) - &p.xtilde).norm());
        println!("  xi estimate    = {:.6}", cert.xi_estimate);
    }
    Ok(())
}
