use super::SymMatrix;

/// `H·M·H` with `H = I − (1/n)·1·1ᵀ`: subtracts row and column means and adds
/// back the grand mean.
pub fn centering_projection(m: &SymMatrix) -> SymMatrix {
    centered_scaled(m, 1.0)
}

/// Double centering `−½·H·M·H`.
///
/// Applied to a squared-distance matrix this recovers the Gram matrix of the
/// centered points.
pub fn double_center(m: &SymMatrix) -> SymMatrix {
    centered_scaled(m, -0.5)
}

fn centered_scaled(m: &SymMatrix, factor: f64) -> SymMatrix {
    let n = m.order();
    let nf = n as f64;
    // Row means equal column means for a symmetric matrix.
    let means: Vec<f64> = m.row_sums().into_iter().map(|s| s / nf).collect();
    let grand = means.iter().sum::<f64>() / nf;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(factor * (m.get(i, j) - means[i] - means[j] + grand));
        }
    }
    SymMatrix::symmetrized(n, data)
}

/// Squared distances from a Gram matrix: `D₂ = s·1ᵀ + 1·sᵀ − 2S` where `s` is
/// the diagonal of `S`.
pub fn gram_to_sqdist(s: &SymMatrix) -> SymMatrix {
    let n = s.order();
    let d = s.diag();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(if i == j {
                0.0
            } else {
                d[i] + d[j] - 2.0 * s.get(i, j)
            });
        }
    }
    SymMatrix::symmetrized(n, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::eigendecompose;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sqdist(points: &[Vec<f64>]) -> SymMatrix {
        SymMatrix::from_fn(points.len(), |i, j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum()
        })
        .unwrap()
    }

    #[test]
    fn constants_are_annihilated() {
        let ones = SymMatrix::from_fn(3, |_, _| 1.0).unwrap();
        assert!(double_center(&ones).max_abs() < 1e-15);
    }

    #[test]
    fn collinear_points_give_outer_product() {
        let d2 = sqdist(&[vec![0.0], vec![0.5], vec![1.0]]);
        let s = double_center(&d2);
        let x = [-0.5, 0.0, 0.5];
        for i in 0..3 {
            for j in 0..3 {
                assert!((s.get(i, j) - x[i] * x[j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn square_corners_gram_spectrum() {
        let corners = [
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ];
        let s = double_center(&sqdist(&corners));
        let eig = eigendecompose(&s).unwrap();
        let expected = [1.0, 1.0, 0.0, 0.0];
        for (v, e) in eig.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{:?}", eig.values());
        }
    }

    #[test]
    fn gram_to_sqdist_examples() {
        let id = SymMatrix::identity(2).unwrap();
        assert_eq!(gram_to_sqdist(&id).to_rows(), vec![vec![0.0, 2.0], vec![2.0, 0.0]]);
        let zero = SymMatrix::from_fn(3, |_, _| 0.0).unwrap();
        assert_eq!(gram_to_sqdist(&zero).max_abs(), 0.0);
    }

    #[test]
    fn round_trip_on_random_centered_rank_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut pts: Vec<Vec<f64>> = (0..5)
                .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
                .collect();
            for c in 0..2 {
                let mean = pts.iter().map(|p| p[c]).sum::<f64>() / 5.0;
                pts.iter_mut().for_each(|p| p[c] -= mean);
            }
            let gram = SymMatrix::from_fn(5, |i, j| pts[i][0] * pts[j][0] + pts[i][1] * pts[j][1]).unwrap();
            let back = double_center(&gram_to_sqdist(&gram));
            assert!(back.max_abs_diff(&gram).unwrap() < 1e-14);
        }
    }

    #[test]
    fn row_and_column_sums_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let raw: Vec<f64> = (0..81).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let m = SymMatrix::new(9, raw).unwrap();
        let s = double_center(&m);
        let tol = 1e-10 * 9.0 * m.max_abs();
        assert!(s.row_sums().iter().all(|r| r.abs() <= tol));
    }

    #[test]
    fn centering_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let raw: Vec<f64> = (0..36).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let m = SymMatrix::new(6, raw).unwrap();
        let once = centering_projection(&m);
        let twice = centering_projection(&once);
        assert!(once.max_abs_diff(&twice).unwrap() < 1e-12);
    }
}
