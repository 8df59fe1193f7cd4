//! Numerical laboratory for radially symmetric isentropic Euler flows with
//! vacuum at the origin.
//!
//! The crate constructs parametric initial data whose sound speed vanishes at
//! the origin, certifies the weighted-momentum admissibility conditions that
//! force finite-time breakdown, predicts the explicit Riccati blow-up-time
//! bound, simulates the flow with a vacuum-tolerant finite-volume scheme in
//! 2D/3D radial symmetry, and checks the chain of differential inequalities
//! (rate positivity, convexity, Riccati bound, envelope, localization) along
//! the computed trajectory.

// validation guards use `!(x > 0.0)` on purpose: unlike `x <= 0.0`, the
// negated form also rejects NaN inputs
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod driver;
pub mod functionals;
pub mod gas;
pub mod initdata;
pub mod quad;
pub mod radial;
pub mod solver;
pub mod verifier;
pub mod weights;

/// Scalar abstraction for the closed-form kernels (`gas`, `weights`, `quad`).
/// The simulation pipeline itself is fixed to `f64`.
pub trait Real: num_traits::Float + num_traits::FromPrimitive {}
impl<T: num_traits::Float + num_traits::FromPrimitive> Real for T {}

/// Default scalar used by the pipeline.
pub type Scalar = f64;
/// Gas parameters at the default scalar type.
pub type Gas = gas::GasParams<Scalar>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("solver fault: {0}")]
    Solver(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
