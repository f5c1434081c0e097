#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Eigenvalues of a symmetric matrix (row-major) by Householder reduction to
/// tridiagonal form and Sturm-sequence bisection. Descending.
pub fn sturm_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    for k in 0..n.saturating_sub(2) {
        let alpha_sq: f64 = (k + 1..n).map(|i| m[i][k] * m[i][k]).sum();
        if alpha_sq == 0.0 {
            continue;
        }
        let alpha = -m[k + 1][k].signum() * alpha_sq.sqrt();
        let mut v = vec![0.0; n];
        v[k + 1] = m[k + 1][k] - alpha;
        for i in k + 2..n {
            v[i] = m[i][k];
        }
        let vnorm: f64 = v.iter().map(|x| x * x).sum();
        if vnorm == 0.0 {
            continue;
        }
        // M ← (I − 2vvᵀ/vᵀv) M (I − 2vvᵀ/vᵀv)
        let p: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i][j] * v[j]).sum::<f64>() * 2.0 / vnorm).collect();
        let kfac: f64 = (0..n).map(|i| v[i] * p[i]).sum::<f64>() / vnorm;
        let q: Vec<f64> = (0..n).map(|i| p[i] - kfac * v[i]).collect();
        for i in 0..n {
            for j in 0..n {
                m[i][j] -= q[i] * v[j] + v[i] * q[j];
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    let e: Vec<f64> = (1..n).map(|i| m[i][i - 1]).collect();

    let bound = (0..n)
        .map(|i| {
            d[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 }
        })
        .fold(0.0_f64, f64::max)
        + 1.0;
    // Number of eigenvalues strictly below x.
    let count_below = |x: f64| {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..n {
            let off = if i > 0 { e[i - 1] * e[i - 1] } else { 0.0 };
            q = d[i] - x - if i > 0 { off / q } else { 0.0 };
            if q == 0.0 {
                q = -1e-300;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let mut values: Vec<f64> = (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    values.reverse();
    values
}

#[allow(clippy::needless_range_loop)]
pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-1.0..1.0);
            a[i][j] = x;
            a[j][i] = x;
        }
    }
    a
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, dims: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dims).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

pub fn euclidean(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
                .collect()
        })
        .collect()
}
