//! Closed-form approximate eigenfunctions of the exponential-kernel matrices.
//!
//! Each [`Family`] pairs a trigonometric eigenfunction with the
//! transcendental equation its frequency `a` must satisfy; the eigenvalue is
//! always `1/(1 + a²)`. The checks here measure how far the sampled
//! functions are from exact eigenvectors of the finite matrices and compare
//! that against the `O(1/n)` residual and `O(1/√n)` eigenvalue bounds.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::{build, continuous_kernel, KernelSpec, KernelVariant};
use crate::spectral::{eigendecompose, norm2, SymMatrix};

/// Bisection stops once the bracket is narrower than this.
pub const ROOT_BRACKET_WIDTH: f64 = 1e-13;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `cos(a(x − ½)) − (2/a)·sin(a/2)` with `tan(a/2) = a/(2 + 3a²)`.
    CosCentered,
    /// `sin(a(x − ½))` with `a·cot(a/2) = −1`.
    Sin,
    /// `cos(a(x − ½))` with `a·tan(a/2) = 1`.
    CosUncentered,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::CosCentered, Family::Sin, Family::CosUncentered];

    pub fn name(self) -> &'static str {
        match self {
            Family::CosCentered => "cos-centered",
            Family::Sin => "sin",
            Family::CosUncentered => "cos-uncentered",
        }
    }

    /// Branch index of the first positive root.
    pub fn first_branch(self) -> usize {
        match self {
            Family::CosCentered => 1,
            Family::Sin | Family::CosUncentered => 0,
        }
    }

    /// Open interval that contains exactly one root for branch `k`.
    pub fn bracket(self, k: usize) -> (f64, f64) {
        let kf = k as f64;
        match self {
            Family::CosCentered => (2.0 * kf * PI, 2.0 * kf * PI + 1.0 / (3.0 * kf * PI)),
            Family::Sin => {
                let lo = (2.0 * kf + 1.0) * PI;
                (lo, lo + 1.0 / (kf * PI + PI / 2.0))
            }
            Family::CosUncentered => (2.0 * kf * PI, (2.0 * kf + 1.0) * PI),
        }
    }

    /// Defining equation written as `h(a) = 0`.
    pub fn equation(self, a: f64) -> f64 {
        let half = a / 2.0;
        match self {
            Family::CosCentered => half.tan() - a / (2.0 + 3.0 * a * a),
            Family::Sin => a * half.cos() / half.sin() + 1.0,
            Family::CosUncentered => a * half.tan() - 1.0,
        }
    }

    /// Matrix the family is an approximate eigenfunction of by default.
    pub fn default_matrix(self) -> KernelVariant {
        match self {
            Family::CosCentered | Family::Sin => KernelVariant::CenteredScaled,
            Family::CosUncentered => KernelVariant::Uncentered,
        }
    }

    /// Constant `c` in the residual bound `c/(2n)` and the eigenvalue bound
    /// `c/√n` for this family on `matrix`.
    pub fn bound_constant(self, a: f64, matrix: KernelVariant) -> Result<f64> {
        match (self, matrix) {
            (Family::CosCentered, KernelVariant::CenteredScaled) => Ok(a + 4.0),
            (Family::Sin, KernelVariant::CenteredScaled) => Ok(a + 2.0),
            (Family::CosUncentered, KernelVariant::Uncentered)
            | (Family::Sin, KernelVariant::Uncentered) => Ok(a + 1.0),
            _ => Err(Error::FamilyMismatch {
                family: self.name(),
                matrix: matrix.name(),
            }),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown eigenfunction family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranscendentalRoot {
    pub family: Family,
    pub branch: usize,
    pub a: f64,
    pub lambda: f64,
}

impl TranscendentalRoot {
    /// `|h(a)|` for the family's defining equation.
    pub fn residual(&self) -> f64 {
        self.family.equation(self.a).abs()
    }
}

/// Sign-change bisection on `[lo, hi]`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::invalid(format!(
            "no sign change on [{lo}, {hi}] ({f_lo:e}, {f_hi:e})"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_BRACKET_WIDTH {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The first `count` positive roots of `family`'s equation, one per bracket.
pub fn solve_roots(family: Family, count: usize) -> Result<Vec<TranscendentalRoot>> {
    if count == 0 {
        return Err(Error::invalid("root count must be positive"));
    }
    let first = family.first_branch();
    (first..first + count)
        .map(|branch| {
            let (lo, hi) = family.bracket(branch);
            // Step off the endpoints: the cos-uncentered bracket ends on a
            // pole of tan, and the others start on zeros of the equation's
            // trigonometric part where rounding decides the sign.
            let a = bisect(|a| family.equation(a), lo + 1e-12, hi - 1e-9_f64.min((hi - lo) * 1e-6))?;
            Ok(TranscendentalRoot {
                family,
                branch,
                a,
                lambda: 1.0 / (1.0 + a * a),
            })
        })
        .collect()
}

/// Sampled approximate eigenfunction on the grid `x_i = i/n`, `i = 1..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxEigenfunction {
    pub root: TranscendentalRoot,
    pub samples: Vec<f64>,
    pub normalized: bool,
}

impl ApproxEigenfunction {
    pub fn norm(&self) -> f64 {
        norm2(&self.samples)
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn to_normalized(&self) -> Self {
        let norm = self.norm();
        Self {
            root: self.root,
            samples: self.samples.iter().map(|x| x / norm).collect(),
            normalized: true,
        }
    }
}

/// `x_i − ½` for 1-based `i`, computed as `(2i − n)/(2n)` so that the values
/// at `i` and `n − i` are exact negatives.
pub fn centered_position(i: usize, n: usize) -> f64 {
    (2.0 * i as f64 - n as f64) / (2.0 * n as f64)
}

pub fn eigenfunction_samples(root: &TranscendentalRoot, n: usize) -> Result<ApproxEigenfunction> {
    if n < 2 {
        return Err(Error::invalid("need at least two sample points"));
    }
    let a = root.a;
    let offset = match root.family {
        Family::CosCentered => (2.0 / a) * (a / 2.0).sin(),
        _ => 0.0,
    };
    let samples = (1..=n)
        .map(|i| {
            let t = a * centered_position(i, n);
            match root.family {
                Family::CosCentered => t.cos() - offset,
                Family::Sin => t.sin(),
                Family::CosUncentered => t.cos(),
            }
        })
        .collect();
    Ok(ApproxEigenfunction {
        root: *root,
        samples,
        normalized: false,
    })
}

/// `(1/n)·Σ_j K(x_i, x_j)·f(x_j)` evaluated through the continuous kernel.
pub fn nystrom_apply(samples: &[f64]) -> Result<Vec<f64>> {
    let n = samples.len();
    let nf = n as f64;
    (1..=n)
        .map(|i| {
            let x = i as f64 / nf;
            let mut acc = 0.0;
            for (j, f) in samples.iter().enumerate() {
                acc += continuous_kernel(x, (j + 1) as f64 / nf)? * f;
            }
            Ok(acc / nf)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub nearest_eigenvalue: f64,
    pub gap: f64,
    /// Bound using only `‖f‖₂ ≥ ½`.
    pub bound: f64,
    /// Same argument with the actual sample norm.
    pub sharp_bound: f64,
    pub sample_norm: f64,
    pub pass: bool,
}

fn theory_matrix(n: usize, matrix: KernelVariant) -> Result<SymMatrix> {
    match matrix {
        KernelVariant::CenteredScaled | KernelVariant::Uncentered => {
            build(&KernelSpec::new(n, matrix)?)
        }
        other => Err(Error::invalid(format!(
            "theory checks run on the centered or uncentered matrix, not {}",
            other.name()
        ))),
    }
}

/// Max-entry residual `max_i |(M f)_i − λ f_i|` of the closed-form
/// eigenfunction on `matrix`, against the family's `c/(2n)` bound.
pub fn residual_on(m: &SymMatrix, root: &TranscendentalRoot, matrix: KernelVariant) -> Result<ResidualReport> {
    let n = m.order();
    let c = root.family.bound_constant(root.a, matrix)?;
    let f = eigenfunction_samples(root, n)?;
    let mf = m.mul_vec(&f.samples)?;
    let max_residual = mf
        .iter()
        .zip(&f.samples)
        .fold(0.0_f64, |acc, (y, x)| acc.max((y - root.lambda * x).abs()));
    let bound = c / (2.0 * n as f64);
    Ok(ResidualReport {
        max_residual,
        bound,
        pass: max_residual <= bound,
    })
}

pub fn residual_bound_check(n: usize, root: &TranscendentalRoot) -> Result<ResidualReport> {
    residual_bound_check_on(n, root, root.family.default_matrix())
}

pub fn residual_bound_check_on(
    n: usize,
    root: &TranscendentalRoot,
    matrix: KernelVariant,
) -> Result<ResidualReport> {
    root.family.bound_constant(root.a, matrix)?;
    residual_on(&theory_matrix(n, matrix)?, root, matrix)
}

/// Eigenvalue gap against a precomputed spectrum of the order-`n` `matrix`.
pub fn gap_from_spectrum(
    spectrum: &[f64],
    root: &TranscendentalRoot,
    matrix: KernelVariant,
) -> Result<GapReport> {
    let n = spectrum.len();
    let c = root.family.bound_constant(root.a, matrix)?;
    let (nearest_eigenvalue, gap) = spectrum
        .iter()
        .map(|&v| (v, (v - root.lambda).abs()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .ok_or_else(|| Error::invalid("empty spectrum"))?;
    let sample_norm = eigenfunction_samples(root, n)?.norm();
    let sqrt_n = (n as f64).sqrt();
    let bound = c / sqrt_n;
    Ok(GapReport {
        nearest_eigenvalue,
        gap,
        bound,
        sharp_bound: c / (2.0 * sqrt_n * sample_norm),
        sample_norm,
        pass: gap <= bound,
    })
}

pub fn eigenvalue_gap_check(n: usize, root: &TranscendentalRoot) -> Result<GapReport> {
    eigenvalue_gap_check_on(n, root, root.family.default_matrix())
}

pub fn eigenvalue_gap_check_on(
    n: usize,
    root: &TranscendentalRoot,
    matrix: KernelVariant,
) -> Result<GapReport> {
    root.family.bound_constant(root.a, matrix)?;
    let eig = eigendecompose(&theory_matrix(n, matrix)?)?;
    gap_from_spectrum(eig.values(), root, matrix)
}

/// Max-entry of `S_n·1`: the constant function is an exact eigenfunction
/// (eigenvalue 0) of the continuous kernel and an `O(1/n)` one of `S_n`.
pub fn constant_mode_residual(n: usize) -> Result<f64> {
    let s = theory_matrix(n, KernelVariant::CenteredScaled)?;
    Ok(s.row_sums().into_iter().fold(0.0, |m, r| m.max(r.abs())))
}

/// One approximate eigenvector of `−(1/2n)·P̃₂ₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwinMode {
    pub root: TranscendentalRoot,
    pub lambda: f64,
    /// Length `2n`.
    pub samples: Vec<f64>,
}

/// Approximate eigenvectors of the two-population matrix: `(u, −u)` from the
/// first uncentered cosine, then `(g, 0)` and `(0, g)` from the first sine.
pub fn twin_theory(n: usize) -> Result<[TwinMode; 3]> {
    let cos_root = solve_roots(Family::CosUncentered, 1)?[0];
    let sin_root = solve_roots(Family::Sin, 1)?[0];
    let u = eigenfunction_samples(&cos_root, n)?.samples;
    let g = eigenfunction_samples(&sin_root, n)?.samples;
    let zeros = vec![0.0; n];

    let split: Vec<f64> = u.iter().copied().chain(u.iter().map(|x| -x)).collect();
    let left: Vec<f64> = g.iter().copied().chain(zeros.iter().copied()).collect();
    let right: Vec<f64> = zeros.into_iter().chain(g).collect();
    Ok([
        TwinMode { root: cos_root, lambda: cos_root.lambda, samples: split },
        TwinMode { root: sin_root, lambda: sin_root.lambda, samples: left },
        TwinMode { root: sin_root, lambda: sin_root.lambda, samples: right },
    ])
}

/// `−(1/2n)·P̃₂ₙ`.
pub fn twin_operator(n: usize) -> Result<SymMatrix> {
    build(&KernelSpec::new(n, KernelVariant::Twin)?)?.scaled(-1.0 / (2.0 * n as f64))
}

/// Comparison of a literal equation reading against the adopted one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationReading {
    pub family: Family,
    pub literal_a: f64,
    pub literal_lambda: f64,
    pub literal_gap: f64,
    pub adopted_a: f64,
    pub adopted_lambda: f64,
    pub adopted_gap: f64,
}

/// Checks the literal readings `tan(a/2) = 1` and `cot(a/2) = −1` (first
/// positive roots `π/2` and `3π/2`) against the adopted `a·tan(a/2) = 1` and
/// `a·cot(a/2) = −1` on the spectrum of the order-`n` uncentered matrix.
pub fn equation_readings(n: usize) -> Result<[EquationReading; 2]> {
    let eig = eigendecompose(&theory_matrix(n, KernelVariant::Uncentered)?)?;
    let gap = |lambda: f64| {
        eig.values()
            .iter()
            .fold(f64::INFINITY, |m, v| m.min((v - lambda).abs()))
    };
    let mut out = Vec::with_capacity(2);
    for (family, literal_a) in [(Family::CosUncentered, PI / 2.0), (Family::Sin, 1.5 * PI)] {
        let adopted = solve_roots(family, 1)?[0];
        let literal_lambda = 1.0 / (1.0 + literal_a * literal_a);
        out.push(EquationReading {
            family,
            literal_a,
            literal_lambda,
            literal_gap: gap(literal_lambda),
            adopted_a: adopted.a,
            adopted_lambda: adopted.lambda,
            adopted_gap: gap(adopted.lambda),
        });
    }
    Ok([out[0], out[1]])
}
