//! Spectral seriation and classical multidimensional scaling for data with a
//! latent one-dimensional ordering.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: dense symmetric matrices, double centering, a cyclic Jacobi
//!   eigensolver and a perturbation certifier for approximate eigenpairs.
//! - [`mds`]: classical (Torgerson) scaling with strain evaluation.
//! - [`kernel`]: exponential-kernel proximity matrices and the continuous
//!   centered kernel on `[0, 1]²`.
//! - [`theory`]: closed-form trigonometric eigenfunctions of those kernels,
//!   their transcendental eigenvalue equations and residual/gap checks.
//! - [`cutpoint`]: the cut-point roll-call voting model.
//! - [`pipeline`]: roll-call ingestion, the horseshoe analysis, rank
//!   comparison against external scores and CSV/SVG output.
//! - [`verify`]: the acceptance checks, shared by the test suite and the
//!   `horseshoe verify` subcommand.

pub mod cutpoint;
pub mod error;
pub mod kernel;
pub mod mds;
pub mod pipeline;
pub mod spectral;
pub mod theory;
pub mod verify;

pub use error::{Error, Result};
