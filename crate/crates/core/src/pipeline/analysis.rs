//! Distances → proximity → three-dimensional MDS → seriation.

use std::cmp::Ordering;

use crate::cutpoint::empirical_distance;
use crate::error::{Error, Result};
use crate::mds::{classical_mds, Embedding};
use crate::spectral::{norm2, SymMatrix};

use super::dataset::RollCallDataset;

pub const EMBED_DIMS: usize = 3;
pub const MIN_LEGISLATORS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    G1,
    G2,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::G1 => "G1",
            Group::G2 => "G2",
        }
    }
}

/// Seriation of `n` items.
#[derive(Debug, Clone, PartialEq)]
pub struct Seriation {
    /// Item indices, all of `G1` followed by all of `G2`.
    pub order: Vec<usize>,
    /// Group of item `i`.
    pub groups: Vec<Group>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub dropped_negative_mass: f64,
    pub row_sum_deviation: f64,
    pub dropped_legislators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisResult {
    pub ids: Vec<String>,
    pub parties: Vec<String>,
    /// Gram spectrum, descending.
    pub eigenvalues: Vec<f64>,
    /// `√λ_j`-scaled coordinates.
    pub embedding: Embedding,
    pub order: Vec<usize>,
    pub groups: Vec<Group>,
    pub diagnostics: Diagnostics,
}

impl AnalysisResult {
    /// Position of each legislator in `order`, starting at 1.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.order.len()];
        for (r, &i) in self.order.iter().enumerate() {
            ranks[i] = r + 1;
        }
        ranks
    }
}

/// `1 − e^{−d}` entrywise.
pub fn proximity(d: &SymMatrix) -> Result<SymMatrix> {
    d.map(|x| -(-x).exp_m1())
}

pub fn analyze(d: &RollCallDataset, square_first: bool) -> Result<AnalysisResult> {
    if d.len() < MIN_LEGISLATORS {
        return Err(Error::invalid(format!(
            "analysis needs at least {MIN_LEGISLATORS} legislators, got {}",
            d.len()
        )));
    }
    let dhat = empirical_distance(d.votes())?;
    let embedding = classical_mds(&proximity(&dhat)?, EMBED_DIMS, square_first)?;
    let ordering = order_embedding(&embedding)?;
    Ok(AnalysisResult {
        ids: d.ids().to_vec(),
        parties: d.parties().to_vec(),
        eigenvalues: embedding.spectrum().to_vec(),
        diagnostics: Diagnostics {
            dropped_negative_mass: embedding.dropped_negative_mass(),
            row_sum_deviation: embedding.row_sum_deviation(),
            dropped_legislators: d.dropped().to_vec(),
        },
        embedding,
        order: ordering.order,
        groups: ordering.groups,
    })
}

pub fn order_embedding(e: &Embedding) -> Result<Seriation> {
    if e.dims() < EMBED_DIMS {
        return Err(Error::invalid(format!(
            "ordering needs {EMBED_DIMS} positive eigenvalues, found {}",
            e.dims()
        )));
    }
    order_legislators(&e.eigenvector(0), &e.eigenvector(1), &e.eigenvector(2))
}

fn ascending(values: &[f64], idx: &mut [usize]) {
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
}

/// Splits by the sign of `f1`; the side on which `f2` has the larger norm is
/// `G1` and is sorted by `f2`, the other side is sorted by `f3`.
///
/// Exact zeros of `f1` join the side of the nonzero entry closest to zero
/// (lowest index on ties). If the two `f2` norms agree to 1e-12 relative,
/// `G1` is the side holding the largest `|f2|` entry.
pub fn order_legislators(f1: &[f64], f2: &[f64], f3: &[f64]) -> Result<Seriation> {
    let n = f1.len();
    if f2.len() != n || f3.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: if f2.len() != n { f2.len() } else { f3.len() },
        });
    }
    let anchor = (0..n)
        .filter(|&i| f1[i] != 0.0)
        .min_by(|&a, &b| f1[a].abs().total_cmp(&f1[b].abs()).then(a.cmp(&b)));
    let zero_positive = anchor.is_none_or(|i| f1[i] > 0.0);
    let positive: Vec<bool> = f1
        .iter()
        .map(|&x| if x == 0.0 { zero_positive } else { x > 0.0 })
        .collect();

    let (pos, neg): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| positive[i]);
    let restricted = |idx: &[usize]| norm2(&idx.iter().map(|&i| f2[i]).collect::<Vec<_>>());
    let (np, nn) = (restricted(&pos), restricted(&neg));
    let pos_first = if (np - nn).abs() <= 1e-12 * np.max(nn) {
        let top = (0..n).max_by(|&a, &b| match f2[a].abs().total_cmp(&f2[b].abs()) {
            Ordering::Equal => b.cmp(&a),
            o => o,
        });
        top.is_none_or(|i| positive[i])
    } else {
        np > nn
    };
    let (mut g1, mut g2) = if pos_first { (pos, neg) } else { (neg, pos) };
    ascending(f2, &mut g1);
    ascending(f3, &mut g2);

    let mut groups = vec![Group::G2; n];
    for &i in &g1 {
        groups[i] = Group::G1;
    }
    g1.extend(g2);
    Ok(Seriation { order: g1, groups })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_and_sorts() {
        let f1 = [1.0, 1.0, 1.0, -1.0, -1.0];
        let f2 = [0.5, -0.9, 0.1, 0.0, 0.1];
        let f3 = [0.0, 0.0, 0.0, 0.3, -0.2];
        let o = order_legislators(&f1, &f2, &f3).unwrap();
        assert_eq!(o.order, vec![1, 2, 0, 4, 3]);
        assert_eq!(o.groups, vec![Group::G1, Group::G1, Group::G1, Group::G2, Group::G2]);
    }

    #[test]
    fn single_group_sorted_by_f2() {
        let o = order_legislators(&[1.0, 2.0, 3.0], &[0.3, -0.1, 0.2], &[0.0; 3]).unwrap();
        assert_eq!(o.order, vec![1, 2, 0]);
        assert!(o.groups.iter().all(|&g| g == Group::G1));
    }

    #[test]
    fn zero_joins_nearest_side() {
        let o = order_legislators(&[0.0, -0.1, 0.5, 0.7], &[0.0, 0.0, 1.0, 2.0], &[0.0; 4]).unwrap();
        assert_eq!(o.groups[0], o.groups[1]);
        assert_ne!(o.groups[0], o.groups[2]);
    }

    #[test]
    fn norm_tie_broken_by_largest_entry() {
        let o = order_legislators(&[1.0, 1.0, -1.0, -1.0], &[0.6, 0.8, 0.0, -1.0], &[0.0; 4]).unwrap();
        assert_eq!(o.groups, vec![Group::G2, Group::G2, Group::G1, Group::G1]);
        assert_eq!(o.order, vec![3, 2, 0, 1]);
    }

    #[test]
    fn sign_flips_only_reverse_groups() {
        let f1 = [0.4, 0.2, 0.1, -0.1, -0.3, -0.5];
        let f2 = [0.9, -0.2, 0.4, 0.1, 0.0, -0.1];
        let f3 = [0.0, 0.1, 0.2, 0.5, -0.4, 0.3];
        let base = order_legislators(&f1, &f2, &f3).unwrap();
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let flipped = order_legislators(&neg(&f1), &neg(&f2), &neg(&f3)).unwrap();
        assert_eq!(base.groups, flipped.groups);
        let g1 = base.groups.iter().filter(|&&g| g == Group::G1).count();
        let mut a = flipped.order[..g1].to_vec();
        a.reverse();
        assert_eq!(a, base.order[..g1]);
        let mut b = flipped.order[g1..].to_vec();
        b.reverse();
        assert_eq!(b, base.order[g1..]);
    }

    #[test]
    fn mismatched_lengths() {
        assert!(order_legislators(&[1.0], &[1.0, 2.0], &[1.0]).is_err());
    }
}
