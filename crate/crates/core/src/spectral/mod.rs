//! Dense symmetric linear algebra.
//!
//! Everything here works on [`SymMatrix`], a row-major `n × n` buffer that is
//! symmetrized on construction. Values are immutable once built and every
//! operation is a pure function of its inputs.

mod centering;
mod eigen;
mod matrix;
mod perturbation;

pub use centering::{centering_projection, double_center, gram_to_sqdist};
pub use eigen::{eigendecompose, EigenDecomposition, CLUSTER_RTOL, MAX_SWEEPS};
pub use matrix::{is_centrosymmetric, SymMatrix};
pub use perturbation::{certify_near_eigenpair, PerturbationCertificate};

/// Euclidean norm of a vector.
pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
