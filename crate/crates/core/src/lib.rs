//! Primal-dual local metrics and a predictor-corrector interior-point method
//! for conic programs given only a self-concordant barrier.

pub mod cones;
pub mod conjugate;
pub mod error;
pub mod experiments;
pub mod generate;
pub mod io;
pub mod ipm;
pub mod linalg;
pub mod metrics;
pub mod polynomial;
pub mod quadrature;
pub mod sampling;

pub use error::{Error, Result};
