mod common;

use common::*;
use conic_metrics::cones::{Barrier, HyperbolicBarrier};
use conic_metrics::linalg::{Matrix, Vector};
use conic_metrics::metrics::primal_integral_scaling;
use conic_metrics::polynomial::Polynomial;
use conic_metrics::quadrature::{
    adaptive_hessian_integral, build_custom_rule, gauss_legendre, hessian_integral_exact,
    primal_scaling_exact, LineRule,
};
use proptest::prelude::*;

fn cases() -> Vec<(Polynomial, Vector, Vector)> {
    vec![
        (
            Polynomial::coordinate_product(3),
            Vector::from_vec(vec![1.0, 2.0, 0.5]),
            Vector::from_vec(vec![0.3, -0.8, 0.2]),
        ),
        (
            Polynomial::lorentz(3),
            Vector::from_vec(vec![2.0, 0.3, -0.4]),
            Vector::from_vec(vec![0.5, -0.4, 0.6]),
        ),
        (
            Polynomial::elementary_symmetric(4, 3).unwrap(),
            Vector::from_vec(vec![1.0, 1.5, 0.7, 1.2]),
            Vector::from_vec(vec![0.2, -0.3, 0.25, 0.1]),
        ),
    ]
}

#[test]
fn gauss_legendre_is_exact_to_degree_2k_minus_1() {
    for k in 1..=12 {
        let rule = gauss_legendre(k);
        for d in 0..2 * k {
            let got = rule.integrate(|t| t.powi(d as i32));
            assert!((got - 1.0 / (d as f64 + 1.0)).abs() < 1e-14, "k {k} degree {d}");
        }
    }
}

#[test]
fn custom_rule_integrates_hessian_exactly() {
    for (p, x, delta) in cases() {
        let exact = hessian_integral_exact(&p, &x, &delta).unwrap();
        let n = x.len();
        let reference = Matrix::from_fn(n, n, |i, j| {
            adaptive_simpson(
                &|t: f64| {
                    let y = &x - &delta * t;
                    let v = p.eval(&y);
                    let g = p.gradient(&y);
                    (g[i] * g[j] - v * p.hessian(&y)[(i, j)]) / (v * v)
                },
                0.0,
                1.0,
                1e-14,
            )
        });
        assert!((&exact - &reference).norm() < 1e-10 * reference.norm());
        let barrier = HyperbolicBarrier::new(p.clone(), x.clone()).unwrap();
        let generic = adaptive_hessian_integral(&barrier, &x, &delta, &LineRule::default()).unwrap();
        assert!((exact - generic).norm() < 1e-9 * reference.norm());
    }
}

#[test]
fn exact_scaling_agrees_with_generic_primal_scaling() {
    for (p, x, delta) in cases() {
        let barrier = HyperbolicBarrier::new(p.clone(), x.clone()).unwrap();
        let exact = primal_scaling_exact(&p, &x, &delta, 1.3).unwrap();
        let generic = primal_integral_scaling(&barrier, &x, &delta, 1.3, &LineRule::default()).unwrap();
        assert!((&exact.t2 - &generic.t2).norm() < 1e-9 * exact.t2.norm());
        assert!(barrier.is_interior(&(&x - &delta)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn custom_rule_has_positive_weights_and_correct_mass(seed in any::<u64>(), order in 1usize..5) {
        use rand::Rng;
        let mut r = rng(seed);
        let (p, x, delta) = cases().swap_remove(r.random_range(0..3));
        let scale = r.random_range(0.1..1.0);
        let delta = &delta * scale;
        let rule = build_custom_rule(&p, &x, &delta, order).unwrap();
        prop_assert_eq!(rule.nodes.len(), order);
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        prop_assert!(rule.nodes.iter().all(|t| *t > 0.0 && *t < 1.0));
        let mass = adaptive_simpson(&|t: f64| p.eval(&(&x - &delta * t)).powi(-2), 0.0, 1.0, 1e-14);
        let total: f64 = rule.weights.iter().sum();
        prop_assert!((total - mass).abs() < 1e-10 * mass);
    }
}
