use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point is not in the interior of the cone: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operator is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),

    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("curvature condition fails: {which} = {value:e}")]
    Curvature { which: &'static str, value: f64 },

    #[error("update formula is singular: mu*mutilde - 1 = {gap:e}; use the two-step form")]
    Singular { gap: f64 },

    #[error("outside the neighbourhood: measured {measured:e} > {limit:e}")]
    Neighbourhood { measured: f64, limit: f64 },

    #[error("step assertion failed ({what}): measured {measured:e}, bound {bound:e}")]
    StepAssertion {
        what: &'static str,
        measured: f64,
        bound: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
