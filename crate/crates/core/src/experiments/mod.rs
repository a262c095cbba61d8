//! The two worked examples: scaling entry matrices on a diagonal SDP pair,
//! and the non-existence of a single-Hessian scaling on the Vinberg cone.

mod sdp_example;
mod vinberg;

pub use sdp_example::{integral_entry, sdp_example, SdpExampleReport};
pub use vinberg::{vinberg_experiment, vinberg_slice, VinbergReport, VinbergRow};
