//! Classical (Torgerson) multidimensional scaling.
//!
//! Dissimilarities are (optionally) squared, double centered into a Gram
//! matrix and diagonalized; the embedding keeps the leading positive
//! eigenpairs with coordinates `U·Λ^{1/2}`. Negative eigenvalues, which
//! appear for non-Euclidean input, are never embedded; their total magnitude
//! is reported instead.

use crate::error::{Error, Result};
use crate::spectral::{double_center, eigendecompose, SymMatrix};

/// Eigenvalues at or below this fraction of the largest magnitude count as
/// zero (neither embedded nor reported as negative mass).
pub const POSITIVE_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    coords: Vec<Vec<f64>>,
    used_eigenvalues: Vec<f64>,
    spectrum: Vec<f64>,
    dropped_negative_mass: f64,
    truncated: bool,
    row_sum_deviation: f64,
}

impl Embedding {
    /// Number of embedded points.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dims(&self) -> usize {
        self.used_eigenvalues.len()
    }

    /// Row `i` holds the coordinates of point `i`.
    pub fn coords(&self) -> &[Vec<f64>] {
        &self.coords
    }

    pub fn used_eigenvalues(&self) -> &[f64] {
        &self.used_eigenvalues
    }

    /// Full Gram spectrum, descending.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// Sum of `|λ|` over the negative eigenvalues of the Gram matrix.
    pub fn dropped_negative_mass(&self) -> f64 {
        self.dropped_negative_mass
    }

    /// Set when fewer than the requested dimensions had positive eigenvalues.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Largest absolute row sum of the centered Gram matrix.
    pub fn row_sum_deviation(&self) -> f64 {
        self.row_sum_deviation
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.coords.iter().map(|row| row[j]).collect()
    }

    /// Unit eigenvector behind coordinate column `j`.
    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        let s = self.used_eigenvalues[j].sqrt();
        self.coords.iter().map(|row| row[j] / s).collect()
    }

    /// Copy with the sign of each axis `j` flipped where `flip[j]` is set.
    pub fn with_flipped_axes(&self, flip: &[bool]) -> Self {
        let mut out = self.clone();
        for row in &mut out.coords {
            for (x, &f) in row.iter_mut().zip(flip) {
                if f {
                    *x = -*x;
                }
            }
        }
        out
    }
}

fn validate_dissimilarities(d: &SymMatrix) -> Result<()> {
    let n = d.order();
    let tol = 1e-12 * d.max_abs();
    for i in 0..n {
        if d.get(i, i).abs() > tol {
            return Err(Error::invalid(format!(
                "dissimilarity diagonal must be zero, found {} at {i}",
                d.get(i, i)
            )));
        }
        for j in (i + 1)..n {
            if d.get(i, j) < 0.0 {
                return Err(Error::invalid(format!(
                    "negative dissimilarity {} at ({i}, {j})",
                    d.get(i, j)
                )));
            }
        }
    }
    Ok(())
}

/// Embeds dissimilarities `d` in (at most) `k` dimensions.
///
/// With `square_first` the entries are squared before double centering, the
/// textbook route for distances. Without it `d` itself is centered, which is
/// how the proximity matrices are treated in the kernel analysis.
pub fn classical_mds(d: &SymMatrix, k: usize, square_first: bool) -> Result<Embedding> {
    let n = d.order();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("embedding dimension {k} outside 1..={n}")));
    }
    validate_dissimilarities(d)?;
    let input = if square_first { d.map(|x| x * x)? } else { d.clone() };
    let gram = double_center(&input);
    let row_sum_deviation = gram.row_sums().into_iter().fold(0.0_f64, |m, r| m.max(r.abs()));

    let eig = eigendecompose(&gram)?;
    let values = eig.values();
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let zero_tol = POSITIVE_RTOL * scale;
    let positive = values.iter().take_while(|&&v| v > zero_tol).count();
    if positive == 0 {
        return Err(Error::EmptyEmbedding);
    }
    let dims = k.min(positive);
    let dropped_negative_mass = values.iter().filter(|&&v| v < -zero_tol).map(|v| -v).sum();

    let roots: Vec<f64> = values[..dims].iter().map(|v| v.sqrt()).collect();
    let coords = (0..n)
        .map(|i| (0..dims).map(|j| eig.component(i, j) * roots[j]).collect())
        .collect();

    Ok(Embedding {
        coords,
        used_eigenvalues: values[..dims].to_vec(),
        spectrum: values.to_vec(),
        dropped_negative_mass,
        truncated: dims < k,
        row_sum_deviation,
    })
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Euclidean distances between embedded points.
pub fn reconstructed_distances(e: &Embedding) -> SymMatrix {
    let n = e.len();
    let mut data = Vec::with_capacity(n * n);
    for a in &e.coords {
        for b in &e.coords {
            data.push(sq_dist(a, b).sqrt());
        }
    }
    SymMatrix::symmetrized(n, data)
}

/// `Σ_{i,j} (D₂[i][j] − ‖y_i − y_j‖²)` for the embedded points.
pub fn strain(d2: &SymMatrix, e: &Embedding) -> Result<f64> {
    strain_of_points(d2, e.coords())
}

/// Strain of an arbitrary point configuration.
pub fn strain_of_points(d2: &SymMatrix, points: &[Vec<f64>]) -> Result<f64> {
    if points.len() != d2.order() {
        return Err(Error::DimensionMismatch {
            expected: d2.order(),
            actual: points.len(),
        });
    }
    let mut total = 0.0;
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            total += d2.get(i, j) - sq_dist(a, b);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn distances(points: &[Vec<f64>]) -> SymMatrix {
        SymMatrix::from_fn(points.len(), |i, j| sq_dist(&points[i], &points[j]).sqrt()).unwrap()
    }

    fn corners() -> Vec<Vec<f64>> {
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]
    }

    #[test]
    fn collinear_points_are_reconstructed() {
        let d = distances(&[vec![0.0], vec![0.5], vec![1.0]]);
        let e = classical_mds(&d, 1, true).unwrap();
        assert_eq!(e.dims(), 1);
        assert_eq!(e.spectrum().iter().filter(|&&v| v > 1e-10).count(), 1);
        assert!(reconstructed_distances(&e).max_abs_diff(&d).unwrap() <= 1e-9);
        assert!(!e.truncated());
        assert_eq!(e.dropped_negative_mass(), 0.0);
    }

    #[test]
    fn square_corners() {
        let d = distances(&corners());
        let e = classical_mds(&d, 2, true).unwrap();
        let [l1, l2] = [e.used_eigenvalues()[0], e.used_eigenvalues()[1]];
        assert!((l1 - l2).abs() < 1e-12 && (l1 - 1.0).abs() < 1e-12);
        assert!(reconstructed_distances(&e).max_abs_diff(&d).unwrap() <= 1e-9);
    }

    #[test]
    fn truncation_shrinks_distances() {
        let d = distances(&corners());
        let e = classical_mds(&d, 1, true).unwrap();
        let r = reconstructed_distances(&e);
        let mut strictly_smaller = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!(r.get(i, j) <= d.get(i, j) + 1e-12);
                if r.get(i, j) < d.get(i, j) - 1e-9 {
                    strictly_smaller += 1;
                }
            }
        }
        assert!(strictly_smaller > 0);
        let total = |m: &SymMatrix| m.as_slice().iter().sum::<f64>();
        assert!(total(&r) < total(&d));
    }

    #[test]
    fn strain_examples() {
        let pts = corners();
        let d = distances(&pts);
        let d2 = d.map(|x| x * x).unwrap();
        let full = classical_mds(&d, 2, true).unwrap();
        let one = classical_mds(&d, 1, true).unwrap();
        let s2 = strain(&d2, &full).unwrap();
        let s1 = strain(&d2, &one).unwrap();
        assert!(s2.abs() <= 1e-8);
        assert!(s2 < s1);

        let padded: Vec<Vec<f64>> = full
            .coords()
            .iter()
            .map(|r| r.iter().copied().chain([0.0]).collect())
            .collect();
        assert_eq!(strain_of_points(&d2, &padded).unwrap(), s2);
        assert!(strain_of_points(&d2, &padded[..3]).is_err());
    }

    #[test]
    fn single_point() {
        let d = SymMatrix::new(1, vec![0.0]).unwrap();
        assert!(matches!(classical_mds(&d, 1, true), Err(Error::EmptyEmbedding)));
    }

    #[test]
    fn k_larger_than_rank_is_truncated() {
        let d = distances(&[vec![0.0], vec![0.5], vec![1.0]]);
        let e = classical_mds(&d, 3, true).unwrap();
        assert_eq!(e.dims(), 1);
        assert!(e.truncated());
        assert!(classical_mds(&d, 4, true).is_err());
        assert!(classical_mds(&d, 0, true).is_err());
    }

    #[test]
    fn rejects_invalid_dissimilarities() {
        let neg = SymMatrix::from_rows(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
        assert!(classical_mds(&neg, 1, true).is_err());
        let diag = SymMatrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(classical_mds(&diag, 1, true).is_err());
    }

    #[test]
    fn non_euclidean_input_reports_negative_mass() {
        // violates the triangle inequality
        let d = SymMatrix::from_rows(&[
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap();
        let e = classical_mds(&d, 3, true).unwrap();
        assert!(e.dropped_negative_mass() > 0.0);
        assert!(e.used_eigenvalues().iter().all(|&v| v > 0.0));
    }

    #[test]
    fn eigenvector_and_axis_flip() {
        let d = distances(&corners());
        let e = classical_mds(&d, 2, true).unwrap();
        let v = e.eigenvector(0);
        assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        let f = e.with_flipped_axes(&[true, false]);
        assert_eq!(f.column(0), e.column(0).iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(f.column(1), e.column(1));
    }
}
