//! Rank-two corrections of the midpoint metric and of an arbitrary starting
//! operator, in the two-step, product and single-formula forms.

use conic_metrics::cones::{BlockSpec, ProductCone};
use conic_metrics::linalg::{Matrix, Vector};
use conic_metrics::metrics::{
    low_rank_update_bfgs_form, low_rank_update_direct, low_rank_update_two_step, midpoint_metric,
    LocalMetric, Provenance, ShadowPair,
};

fn main() -> conic_metrics::Result<()> {
    let cone = ProductCone::new(vec![BlockSpec::Psd { side: 2 }])?;
    let x = Vector::from_vec(vec![1.0, 0.2, 1.5]);
    let s = Vector::from_vec(vec![0.9, -0.1, 0.6]);
    let pair = ShadowPair::new(&cone.primal, &cone.dual, &x, &s)?;
    let starts = [
        ("midpoint", midpoint_metric(&cone.dual, &pair.s, &pair.stilde, pair.mu)?),
        ("identity", LocalMetric::new(Matrix::identity(3, 3), Provenance::Custom)?),
    ];
    for (name, h) in starts {
        println!("start: {name}");
        for (form, m) in [
            ("two-step", low_rank_update_two_step(&h, &pair)?),
            ("bfgs", low_rank_update_bfgs_form(&h, &pair)?),
            ("direct", low_rank_update_direct(&h, &pair)?),
        ] {
            println!(
                "  {form:<8} |T^2 s - x| = {:.1e}  |T^2 s~ - x~| = {:.1e}",
                (m.apply(&pair.s) - &pair.x).norm(),
                (m.apply(&pair.stilde) - &pair.xtilde).norm()
            );
        }
    }
    Ok(())
}
