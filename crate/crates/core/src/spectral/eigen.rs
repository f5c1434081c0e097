use std::ops::Range;

use super::{dot, norm2, SymMatrix};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Stop once the off-diagonal Frobenius norm falls below this fraction of
/// `‖M‖_F`.
const OFF_DIAGONAL_RTOL: f64 = 1e-12;

/// Eigenvalues closer than this (relative to the largest magnitude) are
/// treated as one degenerate cluster.
pub const CLUSTER_RTOL: f64 = 1e-8;

// Entries within this relative distance of the column maximum count as tied
// when choosing the sign-defining entry.
const SIGN_TIE_RTOL: f64 = 1e-12;

/// Eigenvalues sorted descending with orthonormal eigenvectors.
///
/// Column `j` of the vector matrix pairs with `values()[j]`. Each column is
/// sign-canonicalized so that its largest-magnitude entry (lowest index on
/// ties) is nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    n: usize,
    values: Vec<f64>,
    // row-major n × n, columns are eigenvectors
    vectors: Vec<f64>,
    sweeps: usize,
}

impl EigenDecomposition {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Entry `i` of eigenvector `j`.
    pub fn component(&self, i: usize, j: usize) -> f64 {
        self.vectors[i * self.n + j]
    }

    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.component(i, j)).collect()
    }

    /// Number of Jacobi sweeps the solver needed.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    fn scale(&self) -> f64 {
        self.values
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(f64::MIN_POSITIVE)
    }

    /// Index ranges of eigenvalue clusters. Consecutive (sorted) eigenvalues
    /// closer than `CLUSTER_RTOL` times the spectral scale share a cluster.
    pub fn clusters(&self) -> Vec<Range<usize>> {
        let tol = CLUSTER_RTOL * self.scale();
        let mut out = Vec::new();
        let mut start = 0;
        for j in 1..=self.n {
            if j == self.n || self.values[j - 1] - self.values[j] > tol {
                out.push(start..j);
                start = j;
            }
        }
        out
    }

    /// The cluster containing eigenvalue index `j`.
    pub fn cluster_of(&self, j: usize) -> Range<usize> {
        self.clusters()
            .into_iter()
            .find(|c| c.contains(&j))
            .expect("every index belongs to a cluster")
    }

    /// Index of the eigenvalue nearest to `lambda` (lowest index on ties).
    pub fn nearest(&self, lambda: f64) -> usize {
        let mut best = 0;
        for (j, v) in self.values.iter().enumerate() {
            if (v - lambda).abs() < (self.values[best] - lambda).abs() {
                best = j;
            }
        }
        best
    }

    /// Orthogonal projection of `f` onto the span of eigenvectors `range`.
    pub fn project(&self, f: &[f64], range: Range<usize>) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for j in range {
            let v = self.vector(j);
            let c = dot(f, &v);
            out.iter_mut().zip(&v).for_each(|(o, x)| *o += c * x);
        }
        out
    }

    /// `‖f − Pf‖₂` where `P` projects onto the eigenspace spanned by `range`.
    pub fn distance_to_eigenspace(&self, f: &[f64], range: Range<usize>) -> f64 {
        let p = self.project(f, range);
        let diff: Vec<f64> = f.iter().zip(&p).map(|(a, b)| a - b).collect();
        norm2(&diff)
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Rotations are applied in fixed row-by-row order, so the result is a
/// deterministic function of the input.
pub fn eigendecompose(m: &SymMatrix) -> Result<EigenDecomposition> {
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let threshold = OFF_DIAGONAL_RTOL * m.frobenius();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps index order among exactly equal eigenvalues
    order.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]));
    let values = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + col] = v[i * n + k];
        }
    }
    canonicalize_signs(&mut vectors, n);

    Ok(EigenDecomposition {
        n,
        values,
        vectors,
        sweeps,
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j] * a[i * n + j];
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`: `A ← JᵀAJ`, `V ← VJ`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}

fn canonicalize_signs(vectors: &mut [f64], n: usize) {
    for j in 0..n {
        let max = (0..n).fold(0.0_f64, |m, i| m.max(vectors[i * n + j].abs()));
        let pivot = (0..n)
            .find(|&i| vectors[i * n + j].abs() >= max * (1.0 - SIGN_TIE_RTOL))
            .unwrap_or(0);
        if vectors[pivot * n + j] < 0.0 {
            for i in 0..n {
                vectors[i * n + j] = -vectors[i * n + j];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = eigendecompose(&m).unwrap();
        assert!((e.values()[0] - 3.0).abs() < 1e-14);
        assert!((e.values()[1] - 1.0).abs() < 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((e.component(0, 0) - h).abs() < 1e-14);
        assert!((e.component(1, 0) - h).abs() < 1e-14);
        // (1, -1)/√2 with the tie broken at index 0
        assert!((e.component(0, 1) - h).abs() < 1e-14);
        assert!((e.component(1, 1) + h).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let (lambda, s) = (1.0, 0.5);
        let m = SymMatrix::diagonal(&[lambda, lambda + s]).unwrap();
        let e = eigendecompose(&m).unwrap();
        assert_eq!(e.values(), &[lambda + s, lambda]);
        assert_eq!(e.vector(0), vec![0.0, 1.0]);
        assert_eq!(e.vector(1), vec![1.0, 0.0]);
        assert_eq!(e.sweeps(), 0);
    }

    #[test]
    fn one_by_one() {
        let m = SymMatrix::new(1, vec![-4.0]).unwrap();
        let e = eigendecompose(&m).unwrap();
        assert_eq!(e.values(), &[-4.0]);
        assert_eq!(e.vector(0), vec![1.0]);
    }

    #[test]
    fn clusters_group_repeated_eigenvalues() {
        let m = SymMatrix::diagonal(&[3.0, 1.0, 1.0 + 1e-12, 0.0]).unwrap();
        let e = eigendecompose(&m).unwrap();
        assert_eq!(e.clusters(), vec![0..1, 1..3, 3..4]);
        assert_eq!(e.cluster_of(2), 1..3);
        assert_eq!(e.nearest(0.9), 2);
        assert_eq!(e.nearest(1.5), 1);
    }

    #[test]
    fn sign_canonicalization_makes_largest_entry_nonnegative() {
        let m = SymMatrix::from_rows(&[
            vec![4.0, -1.0, 0.5],
            vec![-1.0, 3.0, -2.0],
            vec![0.5, -2.0, 1.0],
        ])
        .unwrap();
        let e = eigendecompose(&m).unwrap();
        for j in 0..3 {
            let v = e.vector(j);
            let k = (0..3)
                .max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
                .unwrap();
            assert!(v[k] >= 0.0);
        }
    }

    #[test]
    fn distance_to_eigenspace() {
        let m = SymMatrix::diagonal(&[2.0, 1.0]).unwrap();
        let e = eigendecompose(&m).unwrap();
        let d = e.distance_to_eigenspace(&[0.6, 0.8], 0..1);
        assert!((d - 0.8).abs() < 1e-15);
    }
}
