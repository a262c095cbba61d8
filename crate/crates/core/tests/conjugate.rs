mod common;

use std::sync::Arc;

use common::*;
use conic_metrics::cones::{Barrier, BlockSpec, HyperbolicBarrier, SocBarrier};
use conic_metrics::conjugate::{conjugate_gradient_hessian, conjugate_newton, ConjugateBarrier};
use conic_metrics::linalg::{spd_inverse, Vector};
use conic_metrics::polynomial::Polynomial;
use conic_metrics::sampling::{central_primal_guess, random_interior_point};

#[test]
fn newton_matches_closed_form_duals() {
    let mut r = rng(21);
    for spec in [
        BlockSpec::Orthant { dim: 6 },
        BlockSpec::Soc { dim: 5 },
        BlockSpec::Psd { side: 3 },
    ] {
        let c = cone(spec);
        for _ in 0..100 {
            let s = -c.primal.gradient(&random_interior_point(&c, &mut r)).unwrap() * 1.7;
            let x0 = central_primal_guess(&c, &s);
            let result = conjugate_newton(&c.primal, &s, &x0, 1e-12, 200).unwrap();
            assert!(result.converged);
            let closed = -c.dual.gradient(&s).unwrap();
            assert!(relative(&result.xhat, &closed) < 1e-10, "{:e}", relative(&result.xhat, &closed));
            let value = c.dual.value(&s).unwrap();
            assert!((result.value - value).abs() < 1e-10 * (1.0 + value.abs()));
        }
    }
}

#[test]
fn conjugate_hessian_inverts_primal_hessian() {
    let mut r = rng(22);
    let b = SocBarrier::new(4);
    let c = cone(BlockSpec::Soc { dim: 4 });
    for _ in 0..20 {
        let x = random_interior_point(&c, &mut r);
        let s = -b.gradient(&x).unwrap();
        let result = conjugate_newton(&b, &s, &(&x * 2.0), 1e-13, 200).unwrap();
        let (g, h) = conjugate_gradient_hessian(&b, &result).unwrap();
        assert!(relative(&-g, &x) < 1e-10);
        let expected = spd_inverse(&b.hessian(&x).unwrap()).unwrap();
        assert!((h - &expected).norm() < 1e-8 * expected.norm());
    }
}

#[test]
fn hyperbolic_conjugate_satisfies_fenchel_identities() {
    let mut r = rng(23);
    for spec in [cubic(), lorentz(), sigma3()] {
        let c = cone(spec);
        for _ in 0..30 {
            let x = random_interior_point(&c, &mut r);
            let s = -c.primal.gradient(&x).unwrap();
            // F*(-F'(x)) = -theta - F(x) and -F*'(-F'(x)) = x
            let value = c.dual.value(&s).unwrap();
            let expected = -c.theta() - c.primal.value(&x).unwrap();
            assert!((value - expected).abs() < 1e-9 * (1.0 + expected.abs()));
            assert!(relative(&-c.dual.gradient(&s).unwrap(), &x) < 1e-9);
            let h = c.dual.hessian(&s).unwrap();
            let expected = spd_inverse(&c.primal.hessian(&x).unwrap()).unwrap();
            assert!((h - &expected).norm() < 1e-7 * expected.norm());
        }
    }
}

#[test]
fn conjugate_barrier_rejects_exterior_dual_points() {
    let p = Polynomial::coordinate_product(3);
    let e = Vector::repeat(3, 1.0);
    let primal = Arc::new(HyperbolicBarrier::new(p, e.clone()).unwrap());
    let dual = ConjugateBarrier::new(primal, e).unwrap();
    assert!(dual.is_interior(&Vector::from_vec(vec![1.0, 2.0, 0.5])));
    assert!(!dual.is_interior(&Vector::from_vec(vec![1.0, -2.0, 0.5])));
    assert!(dual.gradient(&Vector::from_vec(vec![-1.0, -1.0, -1.0])).is_err());
}
