use crate::error::{Error, Result};

/// Dense real symmetric matrix stored row-major.
///
/// Construction averages the input with its transpose, so `get(i, j) ==
/// get(j, i)` holds bit-for-bit, and rejects non-finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds a matrix of order `n` from `n * n` row-major entries.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix order must be positive"));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self::symmetrized(n, data))
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    // Inputs produced internally are finite by construction; they still go
    // through the averaging step so the exact-symmetry invariant holds.
    pub(crate) fn symmetrized(n: usize, mut data: Vec<f64>) -> Self {
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = 0.5 * (data[i * n + j] + data[j * n + i]);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).iter().sum()).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: v.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Elementwise map. Fails if `f` produces a non-finite value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.n, self.data.iter().map(|&x| f(x)).collect())
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        self.map(|x| factor * x)
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> Result<f64> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// Whether `m` commutes with the counter-diagonal permutation `K`, i.e.
/// `‖MK − KM‖_max ≤ tol`.
pub fn is_centrosymmetric(m: &SymMatrix, tol: f64) -> bool {
    let n = m.order();
    // (MK)[i][j] = M[i][n-1-j], (KM)[i][j] = M[n-1-i][j]
    (0..n).all(|i| (0..n).all(|j| (m.get(i, n - 1 - j) - m.get(n - 1 - i, j)).abs() <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_symmetrizes_by_averaging() {
        let m = SymMatrix::new(2, vec![1.0, 2.0, 4.0, 3.0]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
        assert_eq!(m.diag(), vec![1.0, 3.0]);
    }

    #[test]
    fn rejects_non_finite_and_bad_shapes() {
        assert!(matches!(
            SymMatrix::new(2, vec![1.0, f64::NAN, 0.0, 1.0]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            SymMatrix::new(2, vec![1.0; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(SymMatrix::new(0, vec![]).is_err());
        assert!(SymMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0]]).is_err());
    }

    #[test]
    fn centrosymmetry() {
        let d = SymMatrix::diagonal(&[1.0, 2.0]).unwrap();
        assert!(!is_centrosymmetric(&d, 1e-12));
        let toeplitz = SymMatrix::from_fn(5, |i, j| (-(i as f64 - j as f64).abs()).exp()).unwrap();
        assert!(is_centrosymmetric(&toeplitz, 0.0));
        assert!(is_centrosymmetric(&SymMatrix::identity(1).unwrap(), 0.0));
    }

    #[test]
    fn mul_vec_checks_length() {
        let m = SymMatrix::identity(3).unwrap();
        assert_eq!(m.mul_vec(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(m.mul_vec(&[1.0]).is_err());
    }
}
