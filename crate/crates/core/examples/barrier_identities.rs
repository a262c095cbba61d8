//! Checks the barrier identities and the Dikin bound on each supported cone.

use conic_metrics::cones::{dikin_bound_check, verify_lhscb_identities, BlockSpec, ProductCone};
use conic_metrics::sampling::random_interior_point;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> conic_metrics::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let specs = [
        BlockSpec::Orthant { dim: 4 },
        BlockSpec::Soc { dim: 4 },
        BlockSpec::Psd { side: 3 },
        BlockSpec::Hyperbolic {
            poly: vec![(1.0, vec![1, 1, 1])],
            e: vec![1.0; 3],
        },
    ];
    for spec in specs {
        let cone = ProductCone::new(vec![spec.clone()])?;
        let x = random_interior_point(&cone, &mut rng);
        let report = verify_lhscb_identities(&cone.primal, &x, 1e-8)?;
        println!("{spec:?} (theta = {})", cone.theta());
        for check in &report.checks {
            println!("  {:<28} {:.2e}  {}", check.name, check.residual, if check.passed { "ok" } else { "FAILED" });
        }
        let z = &x * 1.3;
        let dikin = dikin_bound_check(&cone.primal, &x, &z)?;
        println!(
            "  dikin |x - z|_x = {:.3}: ratios [{:.4}, {:.4}] within [{:.4}, {:.4}]",
            dikin.alpha, dikin.min_ratio, dikin.max_ratio, dikin.lower_bound, dikin.upper_bound
        );
    }
    Ok(())
}
