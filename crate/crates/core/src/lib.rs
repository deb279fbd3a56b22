//! Numerical verification of the truncated-cosine singular integral
//! representation of `‖x‖^α`, and sample distance covariance with a general
//! distance exponent.
//!
//! The crate is organised as
//!
//! * [`special_fn`]: complex log-gamma, Bessel `J_ν` and its zeros, sphere moments;
//! * [`kernel`]: the integrand, its validity strip, the normalisation constant
//!   `C(d,α)` and the sphere-averaged profile;
//! * [`verify`]: radial quadrature, the ball/exterior decomposition, a
//!   Monte-Carlo oracle and parameter sweeps;
//! * [`dcov`]: distance covariance/correlation and the permutation test.
//!
//! Work that fans out over independent items (sweeps, Monte-Carlo samples,
//! permutations) runs on rayon when the default `parallel` feature is on and
//! sequentially otherwise; results are identical either way.

pub mod dcov;
pub mod error;
pub mod kernel;
pub mod quadrature;
pub mod rng;
pub mod special_fn;
pub mod verify;

mod par;
mod sum;

pub use error::{ConvergenceFailure, Error, Result};
pub use kernel::{EvaluationPoint, KernelSpec, Strip};
pub use special_fn::ComplexScalar;
pub use verify::{QuadratureConfig, VerificationReport};
