use super::{eigendecompose, norm2, SymMatrix};
use crate::error::{Error, Result};

// Rounding allowance when comparing computed quantities against the bounds.
const BOUND_SLACK: f64 = 1e-12;

/// What the symmetric perturbation theorem guarantees for an approximate
/// eigenpair `(f, λ)` with residual `ε = ‖Mf − λf‖₂`:
///
/// - some eigenvalue `λ_k` satisfies `|λ_k − λ| ≤ ε`;
/// - if every eigenvalue outside `λ_k`'s eigenspace is at least `s > ε` away
///   from `λ_k`, then `f` is within `ε / (s − ε)` of that eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationCertificate {
    /// Residual `ε` of the (normalized) input pair.
    pub residual: f64,
    /// Eigenvalue of `M` nearest to `λ`.
    pub lambda_near: f64,
    /// `|λ_near − λ|`.
    pub gap_to_input: f64,
    /// Distance from the other eigenvalues to `λ_near`; infinite when the
    /// whole spectrum is one cluster.
    pub separation_s: f64,
    /// Dimension of the `λ_near` eigenspace (numerical cluster size).
    pub eigenspace_dim: usize,
    /// Distance from `f` to the `λ_near` eigenspace, present only when
    /// `separation_s > residual`.
    pub eigenvector_distance: Option<f64>,
}

impl PerturbationCertificate {
    /// `ε / (s − ε)` when the separation condition holds.
    pub fn eigenvector_bound(&self) -> Option<f64> {
        (self.separation_s > self.residual).then(|| {
            if self.separation_s.is_infinite() {
                0.0
            } else {
                self.residual / (self.separation_s - self.residual)
            }
        })
    }

    /// Both guarantees hold for the computed spectrum.
    pub fn holds(&self) -> bool {
        let eig_ok = self.gap_to_input <= self.residual + BOUND_SLACK;
        let vec_ok = match (self.eigenvector_distance, self.eigenvector_bound()) {
            (Some(d), Some(b)) => d <= b + BOUND_SLACK,
            (None, None) => true,
            _ => false,
        };
        eig_ok && vec_ok
    }
}

/// Certifies `(f, λ)` as an approximate eigenpair of `m`. `f` is normalized
/// first unless its norm is already 1 to within `1e-12`.
pub fn certify_near_eigenpair(
    m: &SymMatrix,
    f: &[f64],
    lambda: f64,
) -> Result<PerturbationCertificate> {
    let n = m.order();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: f.len(),
        });
    }
    let norm = norm2(f);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::invalid("trial vector must have a finite nonzero norm"));
    }
    let f: Vec<f64> = if (norm - 1.0).abs() <= 1e-12 {
        f.to_vec()
    } else {
        f.iter().map(|x| x / norm).collect()
    };

    let mf = m.mul_vec(&f)?;
    let r: Vec<f64> = mf.iter().zip(&f).map(|(a, b)| a - lambda * b).collect();
    let residual = norm2(&r);

    let eig = eigendecompose(m)?;
    let k = eig.nearest(lambda);
    let cluster = eig.cluster_of(k);
    let lambda_near = eig.values()[k];
    let separation_s = eig
        .values()
        .iter()
        .enumerate()
        .filter(|(j, _)| !cluster.contains(j))
        .map(|(_, v)| (v - lambda_near).abs())
        .fold(f64::INFINITY, f64::min);

    let eigenvector_distance =
        (separation_s > residual).then(|| eig.distance_to_eigenspace(&f, cluster.clone()));

    Ok(PerturbationCertificate {
        residual,
        lambda_near,
        gap_to_input: (lambda_near - lambda).abs(),
        separation_s,
        eigenspace_dim: cluster.len(),
        eigenvector_distance,
    })
}
