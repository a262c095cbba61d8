mod common;

use common::*;
use conic_metrics::cones::{
    dikin_bound_check, verify_lhscb_identities, Barrier, BlockSpec, ProductCone,
};
use conic_metrics::linalg::{quad_form, Vector};
use conic_metrics::sampling::random_interior_point;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

fn family(index: usize) -> ProductCone {
    match index {
        0 => cone(BlockSpec::Orthant { dim: 5 }),
        1 => cone(BlockSpec::Soc { dim: 5 }),
        2 => cone(BlockSpec::Psd { side: 3 }),
        3 => cone(cubic()),
        4 => cone(lorentz()),
        5 => cone(sigma3()),
        _ => ProductCone::new(vec![
            BlockSpec::Orthant { dim: 2 },
            BlockSpec::Soc { dim: 3 },
            BlockSpec::Psd { side: 2 },
        ])
        .unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn primal_barrier_identities_hold(index in 0usize..7, seed in any::<u64>()) {
        let c = family(index);
        let x = random_interior_point(&c, &mut rng(seed));
        let report = verify_lhscb_identities(&c.primal, &x, 1e-8).unwrap();
        for check in &report.checks {
            prop_assert!(check.passed, "{}: {:e}", check.name, check.residual);
        }
    }

    #[test]
    fn dual_barrier_identities_hold(index in 0usize..7, seed in any::<u64>()) {
        let c = family(index);
        let x = random_interior_point(&c, &mut rng(seed));
        let s = -c.primal.gradient(&x).unwrap();
        let report = verify_lhscb_identities(&c.dual, &s, 1e-7).unwrap();
        for check in &report.checks {
            prop_assert!(check.passed, "{}: {:e}", check.name, check.residual);
        }
    }

    #[test]
    fn dikin_ellipsoid_is_interior(index in 0usize..7, seed in any::<u64>(), radius in 0.0f64..0.95) {
        let c = family(index);
        let mut r = rng(seed);
        let x = random_interior_point(&c, &mut r);
        let h = c.primal.hessian(&x).unwrap();
        let d = Vector::from_fn(c.dim(), |_, _| StandardNormal.sample(&mut r));
        let z = &x + &d * (radius / quad_form(&h, &d).sqrt());
        let report = dikin_bound_check(&c.primal, &x, &z).unwrap();
        prop_assert!(report.passed, "{report:?}");
    }

    #[test]
    fn gradient_is_minus_dual_point_of_scaled_x(index in 0usize..7, seed in any::<u64>(), t in 0.1f64..10.0) {
        let c = family(index);
        let x = random_interior_point(&c, &mut rng(seed));
        let g = c.primal.gradient(&x).unwrap();
        let gt = c.primal.gradient(&(&x * t)).unwrap();
        prop_assert!(relative(&(gt * t), &g) < 1e-10);
    }
}

#[test]
fn exterior_points_are_rejected() {
    let mut r = rng(11);
    for index in 0..7 {
        let c = family(index);
        let x = random_interior_point(&c, &mut r);
        assert!(!c.primal.is_interior(&-&x));
        assert!(c.primal.gradient(&-&x).is_err());
    }
}

#[test]
fn soc_boundary_point_is_not_interior() {
    let c = cone(BlockSpec::Soc { dim: 3 });
    let x = Vector::from_vec(vec![1.0, 0.6, 0.8]);
    assert!(!c.primal.is_interior(&x));
    let mut r = rng(12);
    let inside = &x + Vector::from_vec(vec![r.random_range(1e-6..1e-3), 0.0, 0.0]);
    assert!(c.primal.is_interior(&inside));
}
