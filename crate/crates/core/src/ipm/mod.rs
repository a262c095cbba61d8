//! Feasible-start short-step predictor-corrector method driven by the midpoint
//! metric with two rank-two corrections.

mod scaling;
mod solve;

pub use solve::{solve, SolveOptions, SolveReport, SolveStatus, StepKind, TraceRecord, UpdateForm};

use crate::cones::{Barrier, BlockSpec, ProductCone};
use crate::error::{Error, Result};
use crate::linalg::{cholesky, eigen, numerical_rank, Matrix, Vector};
use scaling::BlockAutomorphism;
use crate::metrics::{
    certify_with, low_rank_update_bfgs_form, low_rank_update_two_step,
    midpoint_metric, LocalMetric, MetricCertificate, PairGeometry,
};

/// Neighbourhood the step metric is built in: `|delta_D|_s <= 1/50`.
pub const WIDE_NEIGHBOURHOOD: f64 = 1.0 / 50.0;
/// Neighbourhood reached by one centering step from the wide one.
pub const NARROW_NEIGHBOURHOOD: f64 = 0.007533;
/// Bound on `|dx|_x` for a centering direction in the wide neighbourhood.
pub const CENTERING_STEP_BOUND: f64 = 0.024226;
/// Predictor step length times `sqrt(theta)`.
pub const PREDICTOR_CONSTANT: f64 = 0.047464;
/// Iterations per halving of the gap allowed by the complexity bound, over `sqrt(theta)`.
pub const HALVING_CONSTANT: f64 = 42.0;

const FEASIBILITY_TOL: f64 = 1e-8;

/// `min <c, x>` subject to `A x = b`, `x` in the product cone.
#[derive(Debug, Clone)]
pub struct ConicProblem {
    pub a: Matrix,
    pub b: Vector,
    pub c: Vector,
    pub cone: ProductCone,
}

impl ConicProblem {
    pub fn new(a: Matrix, b: Vector, c: Vector, blocks: Vec<BlockSpec>) -> Result<Self> {
        let cone = ProductCone::new(blocks)?;
        let n = cone.dim();
        if a.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a.ncols(),
            });
        }
        if c.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.len(),
            });
        }
        if b.len() != a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                got: b.len(),
            });
        }
        if a.nrows() > n {
            return Err(Error::Invalid(format!(
                "{} constraints for {} variables",
                a.nrows(),
                n
            )));
        }
        if a.nrows() > 0 && numerical_rank(&a, 1e-10) < a.nrows() {
            return Err(Error::Invalid("constraint matrix is rank deficient".into()));
        }
        Ok(Self { a, b, c, cone })
    }

    pub fn theta(&self) -> f64 {
        self.cone.theta()
    }

    pub fn primal_residual(&self, x: &Vector) -> f64 {
        (&self.a * x - &self.b).norm()
    }

    pub fn dual_residual(&self, y: &Vector, s: &Vector) -> f64 {
        (self.a.transpose() * y + s - &self.c).norm()
    }
}

/// A feasible interior iterate. Besides the original `(x, y, s)` it carries a
/// block automorphism `L` of the cone and the scaled pair `x^ = L^-1 x`,
/// `s^ = L^T s`; `geometry` and every step quantity live in the scaled
/// coordinates, where the iterates stay well conditioned as `mu -> 0`. Local
/// norms, `mu`, the gap and the metric certificate are invariant under `L`.
#[derive(Debug, Clone)]
pub struct IterateState {
    pub x: Vector,
    pub y: Vector,
    pub s: Vector,
    pub scaling: Matrix,
    pub geometry: PairGeometry,
}

impl IterateState {
    pub fn mu(&self) -> f64 {
        self.geometry.pair.mu
    }

    /// `<x, s>`, evaluated in the scaled coordinates.
    pub fn gap(&self) -> f64 {
        self.geometry.pair.x.dot(&self.geometry.pair.s)
    }

    /// A scaled-coordinate metric `T^2` as the metric `L T^2 L^T` on the original pair.
    pub fn unscale_metric(&self, metric: &LocalMetric) -> Result<LocalMetric> {
        let l = &self.scaling;
        LocalMetric::new(l * &metric.t2 * l.transpose(), metric.provenance)
    }

    /// A scaled primal direction in the original coordinates.
    pub fn unscale_primal(&self, dx: &Vector) -> Vector {
        &self.scaling * dx
    }
}

/// Newton directions; `dx` and `ds` are in the scaled coordinates of the state.
#[derive(Debug, Clone)]
pub struct StepDirections {
    pub dx: Vector,
    pub dy: Vector,
    pub ds: Vector,
    pub gamma: f64,
    /// `T^-1 (-x + gamma mu x~)`
    pub r_v: Vector,
    /// `|T^-1 dx|`
    pub scaled_dx_norm: f64,
    /// `|T ds|`
    pub scaled_ds_norm: f64,
    /// `<T^-1 dx, T ds> / |r_v|^2`
    pub scaled_inner: f64,
}

/// Populates the shadow iterates and local Hessians of a feasible interior pair.
pub fn build_shadow(problem: &ConicProblem, x: &Vector, y: &Vector, s: &Vector) -> Result<IterateState> {
    let n = problem.cone.dim();
    for v in [x, s] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    if y.len() != problem.a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: problem.a.nrows(),
            got: y.len(),
        });
    }
    let pr = problem.primal_residual(x);
    if pr > FEASIBILITY_TOL * (1.0 + problem.b.norm()) {
        return Err(Error::Invalid(format!("primal residual {pr:e}")));
    }
    let dr = problem.dual_residual(y, s);
    if dr > FEASIBILITY_TOL * (1.0 + problem.c.norm()) {
        return Err(Error::Invalid(format!("dual residual {dr:e}")));
    }
    let cone = &problem.cone;
    if !cone.primal.is_interior(x) {
        return Err(Error::Domain("primal iterate is not interior".into()));
    }
    if !cone.dual.is_interior(s) {
        return Err(Error::Domain("dual iterate is not interior".into()));
    }
    let aut = BlockAutomorphism::at(cone, x)?;
    let ss = aut.lambda.transpose() * s;
    scaled_state(problem, x.clone(), y.clone(), s.clone(), aut, ss)
}

fn scaled_state(
    problem: &ConicProblem,
    x: Vector,
    y: Vector,
    s: Vector,
    aut: BlockAutomorphism,
    ss: Vector,
) -> Result<IterateState> {
    let cone = &problem.cone;
    let geometry = PairGeometry::new(&cone.primal, &cone.dual, &aut.unit, &ss)?;
    Ok(IterateState {
        x,
        y,
        s,
        scaling: aut.lambda,
        geometry,
    })
}

/// `|delta_D|_s = <F*''(s) delta_D, delta_D>^(1/2)`
pub fn neighbourhood_measure(state: &IterateState) -> f64 {
    state.geometry.neighbourhood()
}

/// Midpoint metric `mu F*''((s + mu s~)/2)` corrected to map `s -> x`, `s~ -> x~`.
pub fn step_metric_unchecked(
    problem: &ConicProblem,
    state: &IterateState,
    form: UpdateForm,
) -> Result<LocalMetric> {
    let p = &state.geometry.pair;
    let h = midpoint_metric(&problem.cone.dual, &p.s, &p.stilde, p.mu)?;
    match form {
        UpdateForm::TwoStep => low_rank_update_two_step(&h, p),
        UpdateForm::Bfgs => low_rank_update_bfgs_form(&h, p),
    }
}

/// The step metric with its certificate; requires `|delta_D|_s <= 1/50`.
pub fn build_step_metric(
    problem: &ConicProblem,
    state: &IterateState,
) -> Result<(LocalMetric, MetricCertificate)> {
    let measured = neighbourhood_measure(state);
    if measured > WIDE_NEIGHBOURHOOD {
        return Err(Error::Neighbourhood {
            measured,
            limit: WIDE_NEIGHBOURHOOD,
        });
    }
    let metric = step_metric_unchecked(problem, state, UpdateForm::TwoStep)?;
    let cert = certify_with(&metric, &state.geometry, 1.237483)?;
    Ok((metric, cert))
}

/// Solves `A dx = 0`, `A^T dy + ds = 0`, `dx + T^2 ds = -x + gamma mu x~`.
pub fn solve_newton_system(
    problem: &ConicProblem,
    state: &IterateState,
    metric: &LocalMetric,
    gamma: f64,
) -> Result<StepDirections> {
    let p = &state.geometry.pair;
    let rhs = -&p.x + &p.xtilde * (gamma * p.mu);
    let t2 = &metric.t2;
    let a = &(&problem.a * &state.scaling);
    let m = a.nrows();
    let dy = if m == 0 {
        Vector::zeros(0)
    } else {
        let at2 = a * t2;
        let schur = &at2 * a.transpose();
        let chol = cholesky(&schur)
            .map_err(|_| Error::NumericalBreakdown("reduced system is singular".into()))?;
        let r = -(a * &rhs);
        let mut dy = chol.solve(&r);
        let resid = &r - &schur * &dy;
        dy += chol.solve(&resid);
        dy
    };
    let ds = -(a.transpose() * &dy);
    // dx = rhs + T^2 A^T dy
    let dx = &rhs - t2 * &ds;
    // T = V D^(1/2) V^T from one eigendecomposition of T^2
    let eig = eigen(t2);
    if eig.eigenvalues.min() <= 0.0 {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.eigenvalues.min(),
        });
    }
    let root = eig.eigenvalues.map(f64::sqrt);
    let vt = eig.eigenvectors.transpose();
    let r_v = &eig.eigenvectors * (&vt * &rhs).component_div(&root);
    let rv2 = r_v.norm_squared();
    let scaled_dx_norm = (&vt * &dx).component_div(&root).norm();
    let scaled_ds_norm = (&vt * &ds).component_mul(&root).norm();
    let scaled_inner = if rv2 > 0.0 { dx.dot(&ds) / rv2 } else { 0.0 };
    Ok(StepDirections {
        dx,
        dy,
        ds,
        gamma,
        r_v,
        scaled_dx_norm,
        scaled_ds_norm,
        scaled_inner,
    })
}

/// Moves to `(x + alpha dx, y + alpha dy, s + alpha ds)` and rescales at the new `x`.
pub fn take_step(
    problem: &ConicProblem,
    state: &IterateState,
    dir: &StepDirections,
    alpha: f64,
) -> Result<IterateState> {
    let cone = &problem.cone;
    let p = &state.geometry.pair;
    let xs = &p.x + &dir.dx * alpha;
    let ss = &p.s + &dir.ds * alpha;
    if !cone.primal.is_interior(&xs) {
        return Err(Error::Domain("primal iterate is not interior".into()));
    }
    if !cone.dual.is_interior(&ss) {
        return Err(Error::Domain("dual iterate is not interior".into()));
    }
    let x = &state.x + &state.scaling * &dir.dx * alpha;
    let y = &state.y + &dir.dy * alpha;
    let s = &state.s - problem.a.transpose() * &dir.dy * alpha;
    let local = BlockAutomorphism::at(cone, &xs)?;
    let ss = local.lambda.transpose() * ss;
    let aut = BlockAutomorphism {
        lambda: &state.scaling * &local.lambda,
        unit: local.unit,
    };
    scaled_state(problem, x, y, s, aut, ss)
}

fn assert_bound(what: &'static str, measured: f64, bound: f64) -> Result<()> {
    if measured.is_finite() && measured <= bound {
        Ok(())
    } else {
        Err(Error::StepAssertion {
            what,
            measured,
            bound,
        })
    }
}

fn relative_change(new: f64, expected: f64) -> f64 {
    (new - expected).abs() / expected.abs()
}

/// What a centering or predictor step measured on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct StepInfo {
    pub alpha: f64,
    pub gamma: f64,
    /// `|delta_D|_s` before the step.
    pub neighbourhood: f64,
    /// Certificate `xi` of the step metric, when certification was requested.
    pub xi: Option<f64>,
}

fn directions(
    problem: &ConicProblem,
    state: &IterateState,
    form: UpdateForm,
    certify: bool,
    gamma: f64,
) -> Result<(StepDirections, Option<f64>)> {
    let metric = step_metric_unchecked(problem, state, form)?;
    let xi = if certify {
        Some(certify_with(&metric, &state.geometry, 1.237483)?.xi_estimate)
    } else {
        None
    };
    Ok((solve_newton_system(problem, state, &metric, gamma)?, xi))
}

pub(crate) fn centering_inner(
    problem: &ConicProblem,
    state: &IterateState,
    form: UpdateForm,
    certify: bool,
) -> Result<(IterateState, StepInfo)> {
    let measured = neighbourhood_measure(state);
    if measured > WIDE_NEIGHBOURHOOD {
        return Err(Error::Neighbourhood {
            measured,
            limit: WIDE_NEIGHBOURHOOD,
        });
    }
    let (dir, xi) = directions(problem, state, form, certify, 1.0)?;
    assert_bound(
        "|dx|_x after centering direction",
        state.geometry.x_norm(&dir.dx),
        CENTERING_STEP_BOUND,
    )?;
    let next = take_step(problem, state, &dir, 1.0)?;
    assert_bound(
        "relative change of mu in centering",
        relative_change(next.mu(), state.mu()),
        1e-10,
    )?;
    assert_bound(
        "|delta_D|_s after centering",
        neighbourhood_measure(&next),
        NARROW_NEIGHBOURHOOD,
    )?;
    Ok((
        next,
        StepInfo {
            alpha: 1.0,
            gamma: 1.0,
            neighbourhood: measured,
            xi,
        },
    ))
}

/// Full step with `gamma = 1`: `mu` is kept and the pair moves toward the central path.
pub fn centering_step(problem: &ConicProblem, state: &IterateState) -> Result<IterateState> {
    Ok(centering_inner(problem, state, UpdateForm::TwoStep, false)?.0)
}

/// `alpha = 0.047464 / sqrt(theta)`
pub fn predictor_alpha(theta: f64) -> f64 {
    PREDICTOR_CONSTANT / theta.sqrt()
}

/// Largest step in `[alpha_min, 1)` (by bisection) keeping `|delta_D|_s <= 1/50`.
fn adaptive_alpha(
    problem: &ConicProblem,
    state: &IterateState,
    dir: &StepDirections,
    alpha_min: f64,
) -> f64 {
    let ok = |alpha: f64| {
        take_step(problem, state, dir, alpha)
            .map(|n| neighbourhood_measure(&n) <= WIDE_NEIGHBOURHOOD)
            .unwrap_or(false)
    };
    let (mut lo, mut hi) = (alpha_min, 1.0);
    if ok(hi * 0.999) {
        return hi * 0.999;
    }
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-3 * lo {
            break;
        }
    }
    lo
}

pub(crate) fn predictor_inner(
    problem: &ConicProblem,
    state: &IterateState,
    form: UpdateForm,
    certify: bool,
    adaptive: bool,
) -> Result<(IterateState, StepInfo)> {
    let measured = neighbourhood_measure(state);
    if measured > NARROW_NEIGHBOURHOOD {
        return Err(Error::Neighbourhood {
            measured,
            limit: NARROW_NEIGHBOURHOOD,
        });
    }
    let (dir, xi) = directions(problem, state, form, certify, 0.0)?;
    let fixed = predictor_alpha(problem.theta());
    let alpha = if adaptive {
        adaptive_alpha(problem, state, &dir, fixed)
    } else {
        fixed
    };
    let next = take_step(problem, state, &dir, alpha)?;
    assert_bound(
        "relative deviation of mu from (1 - alpha) mu",
        relative_change(next.mu(), (1.0 - alpha) * state.mu()),
        1e-10,
    )?;
    assert_bound(
        "|delta_D|_s after predictor",
        neighbourhood_measure(&next),
        WIDE_NEIGHBOURHOOD,
    )?;
    Ok((
        next,
        StepInfo {
            alpha,
            gamma: 0.0,
            neighbourhood: measured,
            xi,
        },
    ))
}

/// Affine-scaling step with `gamma = 0` and the fixed step length.
pub fn predictor_step(problem: &ConicProblem, state: &IterateState) -> Result<IterateState> {
    Ok(predictor_inner(problem, state, UpdateForm::TwoStep, false, false)?.0)
}

/// One damped centering step (`gamma = 1`) for starts outside the wide
/// neighbourhood: the step is halved until the iterate stays interior and
/// `|delta_D|_s` decreases.
pub(crate) fn damped_centering(
    problem: &ConicProblem,
    state: &IterateState,
    form: UpdateForm,
) -> Result<(IterateState, StepInfo)> {
    let measured = neighbourhood_measure(state);
    let (dir, _) = directions(problem, state, form, false, 1.0)?;
    let mut alpha = 1.0;
    while alpha > 1e-8 {
        if let Ok(next) = take_step(problem, state, &dir, alpha) {
            if neighbourhood_measure(&next) < measured {
                return Ok((
                    next,
                    StepInfo {
                        alpha,
                        gamma: 1.0,
                        neighbourhood: measured,
                        xi: None,
                    },
                ));
            }
        }
        alpha *= 0.5;
    }
    Err(Error::NumericalBreakdown(format!(
        "damped centering made no progress at |delta_D|_s = {measured}"
    )))
}
