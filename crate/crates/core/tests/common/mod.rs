#![allow(dead_code)]

use conic_metrics::cones::{Barrier, BlockSpec, ProductCone};
use conic_metrics::linalg::Vector;
use conic_metrics::sampling::{near_central_dual, random_interior_point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cone(spec: BlockSpec) -> ProductCone {
    ProductCone::new(vec![spec]).unwrap()
}

/// `x1 x2 x3`, hyperbolic in `(1, 1, 1)`.
pub fn cubic() -> BlockSpec {
    BlockSpec::Hyperbolic {
        poly: vec![(1.0, vec![1, 1, 1])],
        e: vec![1.0, 1.0, 1.0],
    }
}

/// `x1^2 - x2^2 - x3^2`, hyperbolic in `(1, 0, 0)`.
pub fn lorentz() -> BlockSpec {
    BlockSpec::Hyperbolic {
        poly: vec![(1.0, vec![2, 0, 0]), (-1.0, vec![0, 2, 0]), (-1.0, vec![0, 0, 2])],
        e: vec![1.0, 0.0, 0.0],
    }
}

/// Third elementary symmetric polynomial in four variables, hyperbolic in `(1, 1, 1, 1)`.
pub fn sigma3() -> BlockSpec {
    BlockSpec::Hyperbolic {
        poly: vec![
            (1.0, vec![1, 1, 1, 0]),
            (1.0, vec![1, 1, 0, 1]),
            (1.0, vec![1, 0, 1, 1]),
            (1.0, vec![0, 1, 1, 1]),
        ],
        e: vec![1.0; 4],
    }
}

/// One cone per family used across the property suites.
pub fn families() -> Vec<(&'static str, ProductCone)> {
    vec![
        ("orthant(4)", cone(BlockSpec::Orthant { dim: 4 })),
        ("soc(4)", cone(BlockSpec::Soc { dim: 4 })),
        ("psd(3)", cone(BlockSpec::Psd { side: 3 })),
        ("hyperbolic(x1x2x3)", cone(cubic())),
        ("hyperbolic(x1^2-x2^2-x3^2)", cone(lorentz())),
    ]
}

/// A random pair with `mu` in `[0.5, 2]` and `|delta_D|_s` uniform in `(0, max_distance]`.
pub fn near_central_pair(cone: &ProductCone, max_distance: f64, rng: &mut ChaCha8Rng) -> (Vector, Vector) {
    let x = random_interior_point(cone, rng);
    let mu = 0.5 + 1.5 * rng.random::<f64>();
    let target = max_distance * (1e-3 + (1.0 - 1e-3) * rng.random::<f64>());
    let s = near_central_dual(&cone.primal, &cone.dual, &x, mu, target, rng).unwrap();
    (x, s)
}

pub fn relative(a: &Vector, b: &Vector) -> f64 {
    (a - b).norm() / b.norm()
}

/// Adaptive Simpson quadrature on `[a, b]`, the reference for quadrature checks.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `|F'(x) + s|*_x`
pub fn conjugate_residual<B: Barrier + ?Sized>(oracle: &B, s: &Vector, x: &Vector) -> f64 {
    let r = oracle.gradient(x).unwrap() + s;
    let h = oracle.hessian(x).unwrap();
    r.dot(&h.cholesky().unwrap().solve(&r)).sqrt()
}
