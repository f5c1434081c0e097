//! Exponential-kernel matrices on the grid `x_i = i/n`, `i = 1..n`, and the
//! continuous centered kernel they converge to.

mod quadrature;

pub use quadrature::{simpson, simpson_split};

use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::spectral::{double_center, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelVariant {
    /// `P(i, j) = 1 − e^{−|i−j|/n}`.
    Proximity,
    /// `A(i, j) = e^{−|i−j|/n} / (2n)`.
    Uncentered,
    /// Closed form of the centered proximity matrix scaled by `1/n`.
    CenteredScaled,
    /// Two-population proximity `[[P, 1], [1, P]]` of order `2n`.
    Twin,
}

impl KernelVariant {
    pub fn name(self) -> &'static str {
        match self {
            KernelVariant::Proximity => "proximity",
            KernelVariant::Uncentered => "uncentered",
            KernelVariant::CenteredScaled => "centered",
            KernelVariant::Twin => "twin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelSpec {
    n: usize,
    variant: KernelVariant,
}

impl KernelSpec {
    pub fn new(n: usize, variant: KernelVariant) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("kernel size must be at least 2, got {n}")));
        }
        Ok(Self { n, variant })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> KernelVariant {
        self.variant
    }

    /// Order of the built matrix (`2n` for the twin variant).
    pub fn order(&self) -> usize {
        match self.variant {
            KernelVariant::Twin => 2 * self.n,
            _ => self.n,
        }
    }
}

/// Builds the matrix described by `spec`.
pub fn build(spec: &KernelSpec) -> Result<SymMatrix> {
    let n = spec.n;
    let nf = n as f64;
    let gap = |i: usize, j: usize| i.abs_diff(j) as f64 / nf;
    match spec.variant {
        KernelVariant::Proximity => SymMatrix::from_fn(n, |i, j| proximity_entry(gap(i, j))),
        KernelVariant::Uncentered => SymMatrix::from_fn(n, |i, j| (-gap(i, j)).exp() / (2.0 * nf)),
        KernelVariant::CenteredScaled => SymMatrix::from_fn(n, |i, j| {
            let xi = (i + 1) as f64 / nf;
            let xj = (j + 1) as f64 / nf;
            (edge_terms(xi) + edge_terms(xj) + (-gap(i, j)).exp() + 2.0 / E - 4.0) / (2.0 * nf)
        }),
        KernelVariant::Twin => SymMatrix::from_fn(2 * n, |i, j| {
            if (i < n) == (j < n) {
                proximity_entry(gap(i % n, j % n))
            } else {
                1.0
            }
        }),
    }
}

fn proximity_entry(d: f64) -> f64 {
    // exact zero on the diagonal
    if d == 0.0 {
        0.0
    } else {
        -(-d).exp_m1()
    }
}

// e^{−x} + e^{−(1−x)}
fn edge_terms(x: f64) -> f64 {
    (-x).exp() + (x - 1.0).exp()
}

/// The proximity matrix double centered on the discrete grid and scaled by
/// `1/n`, i.e. `−(1/2n)·H·P·H`.
///
/// This differs from [`KernelVariant::CenteredScaled`] by `O(1/n²)` per
/// entry: the closed form replaces the discrete row means with integrals.
pub fn double_centered_proximity(n: usize) -> Result<SymMatrix> {
    let p = build(&KernelSpec::new(n, KernelVariant::Proximity)?)?;
    double_center(&p).scaled(1.0 / n as f64)
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} = {v} lies outside [0, 1]")))
    }
}

/// Continuous limit of the centered, scaled proximity matrices:
/// `K(x, y) = ½(e^{−|x−y|} + e^{−y} + e^{−(1−y)} + e^{−x} + e^{−(1−x)}) + e^{−1} − 2`.
pub fn continuous_kernel(x: f64, y: f64) -> Result<f64> {
    check_unit("x", x)?;
    check_unit("y", y)?;
    Ok(0.5 * ((-(x - y).abs()).exp() + (edge_terms(x) + edge_terms(y))) + 1.0 / E - 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

/// Closed form of `∫₀¹ e^{−|x−c|}·trig(a(x − ½)) dx`.
pub fn exp_trig_integral(a: f64, c: f64, mode: Trig) -> f64 {
    let denom = 1.0 + a * a;
    let half = a / 2.0;
    match mode {
        Trig::Cos => {
            2.0 * (a * (c - 0.5)).cos() / denom
                + ((-c).exp() + (c - 1.0).exp()) * (a * half.sin() - half.cos()) / denom
        }
        Trig::Sin => {
            2.0 * (a * (c - 0.5)).sin() / denom
                + ((-c).exp() - (c - 1.0).exp()) * (a * half.cos() + half.sin()) / denom
        }
    }
}

/// The same integral by composite Simpson, split at the kink `x = c`.
pub fn exp_trig_quadrature(a: f64, c: f64, mode: Trig, panels: usize) -> f64 {
    let trig = move |t: f64| match mode {
        Trig::Cos => t.cos(),
        Trig::Sin => t.sin(),
    };
    simpson_split(
        |x| (-(x - c).abs()).exp() * trig(a * (x - 0.5)),
        c,
        panels,
    )
}
