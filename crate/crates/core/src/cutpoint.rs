//! Cut-point model of roll-call voting.
//!
//! Legislators sit at positions in `[0, 1]`. Each bill is a cut-point `C_k`
//! and a polarity `P_k ∈ {0, 1}`; legislator `i` votes `½ − P_k` when
//! `l_i ≤ C_k` and `P_k − ½` otherwise. With uniform cut-points two
//! legislators disagree on a bill with probability `|l_i − l_j|`, so the
//! fraction of disagreements estimates their distance.
//!
//! # Randomness
//!
//! Bill `k` of a draw with seed `s` takes its cut-point and then its polarity
//! from ChaCha8 seeded with `s` on stream `k`. Any bill can therefore be
//! regenerated independently and results do not depend on thread scheduling.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectral::SymMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vote {
    Yea,
    Nay,
    Absent,
}

impl Vote {
    /// `+½`, `−½` or `0`.
    pub fn value(self) -> f64 {
        f64::from(self.half_units()) / 2.0
    }

    /// The vote in units of one half: `1`, `-1` or `0`.
    pub fn half_units(self) -> i8 {
        match self {
            Vote::Yea => 1,
            Vote::Nay => -1,
            Vote::Absent => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Vote::Yea => 'Y',
            Vote::Nay => 'N',
            Vote::Absent => 'X',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "Y" => Some(Vote::Yea),
            "N" => Some(Vote::Nay),
            "X" => Some(Vote::Absent),
            _ => None,
        }
    }
}

/// Legislators × bills matrix of votes.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteMatrix {
    legislators: Vec<String>,
    bills: Vec<String>,
    votes: Vec<Vote>,
}

impl VoteMatrix {
    pub fn new(legislators: Vec<String>, bills: Vec<String>, votes: Vec<Vote>) -> Result<Self> {
        if votes.len() != legislators.len() * bills.len() {
            return Err(Error::DimensionMismatch {
                expected: legislators.len() * bills.len(),
                actual: votes.len(),
            });
        }
        Ok(Self {
            legislators,
            bills,
            votes,
        })
    }

    pub fn n_legislators(&self) -> usize {
        self.legislators.len()
    }

    pub fn n_bills(&self) -> usize {
        self.bills.len()
    }

    pub fn legislator_ids(&self) -> &[String] {
        &self.legislators
    }

    pub fn bill_ids(&self) -> &[String] {
        &self.bills
    }

    pub fn get(&self, i: usize, k: usize) -> Vote {
        self.votes[i * self.bills.len() + k]
    }

    pub fn row(&self, i: usize) -> &[Vote] {
        let m = self.bills.len();
        &self.votes[i * m..(i + 1) * m]
    }

    /// Fraction of bills legislator `i` voted on.
    pub fn participation(&self, i: usize) -> f64 {
        let m = self.n_bills();
        if m == 0 {
            return 0.0;
        }
        let cast = self.row(i).iter().filter(|v| **v != Vote::Absent).count();
        cast as f64 / m as f64
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            legislators: rows.iter().map(|&i| self.legislators[i].clone()).collect(),
            bills: self.bills.clone(),
            votes: rows.iter().flat_map(|&i| self.row(i).iter().copied()).collect(),
        }
    }
}

/// Legislator positions on `[0, 1]`, ascending, with optional party labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Legislature {
    positions: Vec<f64>,
    parties: Option<Vec<String>>,
}

impl Legislature {
    pub fn new(positions: Vec<f64>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::invalid("a legislature needs at least one member"));
        }
        if let Some(p) = positions.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::invalid(format!("position {p} outside [0, 1]")));
        }
        if positions.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("positions must be sorted ascending"));
        }
        Ok(Self {
            positions,
            parties: None,
        })
    }

    /// `n` legislators at `i/n`, `i = 1..n`.
    pub fn equally_spaced(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i as f64 / n as f64).collect())
    }

    pub fn with_parties(mut self, parties: Vec<String>) -> Result<Self> {
        if parties.len() != self.positions.len() {
            return Err(Error::DimensionMismatch {
                expected: self.positions.len(),
                actual: parties.len(),
            });
        }
        self.parties = Some(parties);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn parties(&self) -> Option<&[String]> {
        self.parties.as_deref()
    }

    /// Generated legislator ids `L1..Ln`.
    pub fn ids(&self) -> Vec<String> {
        (1..=self.len()).map(|i| format!("L{i}")).collect()
    }

    /// Latent distances `|l_i − l_j|`.
    pub fn distances(&self) -> SymMatrix {
        let p = &self.positions;
        SymMatrix::symmetrized(
            p.len(),
            p.iter().flat_map(|a| p.iter().map(move |b| (a - b).abs())).collect(),
        )
    }
}

/// Cut-points and polarities of a set of bills.
#[derive(Debug, Clone, PartialEq)]
pub struct BillSet {
    cutpoints: Vec<f64>,
    polarities: Vec<u8>,
    seed: Option<u64>,
}

impl BillSet {
    /// Draws `m` bills with uniform cut-points and fair-coin polarities.
    pub fn draw(m: usize, seed: u64) -> Self {
        let mut cutpoints = Vec::with_capacity(m);
        let mut polarities = Vec::with_capacity(m);
        for k in 0..m {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            cutpoints.push(rng.gen::<f64>());
            polarities.push(rng.gen_range(0..=1));
        }
        Self {
            cutpoints,
            polarities,
            seed: Some(seed),
        }
    }

    pub fn from_parts(cutpoints: Vec<f64>, polarities: Vec<u8>) -> Result<Self> {
        if cutpoints.len() != polarities.len() {
            return Err(Error::DimensionMismatch {
                expected: cutpoints.len(),
                actual: polarities.len(),
            });
        }
        if let Some(c) = cutpoints.iter().find(|c| !(0.0..=1.0).contains(*c)) {
            return Err(Error::invalid(format!("cut-point {c} outside [0, 1]")));
        }
        if polarities.iter().any(|&p| p > 1) {
            return Err(Error::invalid("polarities must be 0 or 1"));
        }
        Ok(Self {
            cutpoints,
            polarities,
            seed: None,
        })
    }

    pub fn len(&self) -> usize {
        self.cutpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cutpoints.is_empty()
    }

    pub fn cutpoints(&self) -> &[f64] {
        &self.cutpoints
    }

    pub fn polarities(&self) -> &[u8] {
        &self.polarities
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Same cut-points with every polarity reversed.
    pub fn with_flipped_polarities(&self) -> Self {
        Self {
            cutpoints: self.cutpoints.clone(),
            polarities: self.polarities.iter().map(|p| 1 - p).collect(),
            seed: self.seed,
        }
    }
}

/// Applies the cut-point rule. A legislator exactly at the cut-point is on
/// the `l_i ≤ C_k` side.
pub fn cast_votes(leg: &Legislature, bills: &BillSet) -> VoteMatrix {
    let bill_ids = (1..=bills.len()).map(|k| format!("B{k}")).collect();
    let mut votes = Vec::with_capacity(leg.len() * bills.len());
    for &l in leg.positions() {
        for (&c, &p) in bills.cutpoints.iter().zip(&bills.polarities) {
            let yea = (l <= c) == (p == 0);
            votes.push(if yea { Vote::Yea } else { Vote::Nay });
        }
    }
    VoteMatrix {
        legislators: leg.ids(),
        bills: bill_ids,
        votes,
    }
}

/// Votes of `leg` on `m` freshly drawn bills.
pub fn simulate(leg: &Legislature, m: usize, seed: u64) -> Result<VoteMatrix> {
    if m == 0 {
        return Err(Error::invalid("at least one bill is required"));
    }
    Ok(cast_votes(leg, &BillSet::draw(m, seed)))
}

/// `d̂(i, j) = (1/m)·Σ_k |V_ik − V_jk|`. A vote against an absence counts ½.
pub fn empirical_distance(v: &VoteMatrix) -> Result<SymMatrix> {
    let n = v.n_legislators();
    let m = v.n_bills();
    if m == 0 {
        return Err(Error::invalid("at least one bill is required"));
    }
    let halves: Vec<Vec<i8>> = (0..n)
        .map(|i| v.row(i).iter().map(|x| x.half_units()).collect())
        .collect();
    let scale = 1.0 / (2.0 * m as f64);
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let total: u32 = halves[i]
                .iter()
                .zip(&halves[j])
                .map(|(a, b)| u32::from(a.abs_diff(*b)))
                .sum();
            let d = f64::from(total) * scale;
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    SymMatrix::new(n, data)
}

/// Largest `|d̂(i, j) − |l_i − l_j||` over all pairs.
pub fn max_deviation(dhat: &SymMatrix, leg: &Legislature) -> Result<f64> {
    dhat.max_abs_diff(&leg.distances())
}

/// Smallest `m` with `m ≥ ln(n/√ε)/ε²`, which makes every pairwise estimate
/// ε-accurate with probability at least `1 − ε`.
pub fn required_bills(n: usize, epsilon: f64) -> Result<usize> {
    if n < 2 {
        return Err(Error::invalid("need at least two legislators"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon {epsilon} outside (0, 1)")));
    }
    Ok(((n as f64 / epsilon.sqrt()).ln() / (epsilon * epsilon)).ceil() as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub bills: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_fraction: f64,
    /// Largest pairwise deviation seen in any trial.
    pub worst_deviation: f64,
}

/// Derives `count` independent seeds from `seed`.
pub fn trial_seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    master.set_stream(u64::MAX);
    (0..count).map(|_| master.next_u64()).collect()
}

/// Runs `trials` simulations with `m = required_bills(n, ε)` bills and counts
/// how often every pairwise distance estimate is within `ε`.
pub fn concentration_trial(
    leg: &Legislature,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<ConcentrationReport> {
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    let m = required_bills(leg.len(), epsilon)?;
    let deviations = trial_seeds(seed, trials)
        .into_par_iter()
        .map(|s| {
            let votes = simulate(leg, m, s)?;
            max_deviation(&empirical_distance(&votes)?, leg)
        })
        .collect::<Result<Vec<f64>>>()?;
    let successes = deviations.iter().filter(|&&d| d <= epsilon).count();
    Ok(ConcentrationReport {
        bills: m,
        trials,
        successes,
        success_fraction: successes as f64 / trials as f64,
        worst_deviation: deviations.iter().fold(0.0, |a, &b| a.max(b)),
    })
}

/// Two equally sized parties, equally spaced on `[0, (1−gap)/2]` and on
/// `[(1+gap)/2, 1]`, labelled `L` and `R`.
pub fn two_party_legislature(n_per_party: usize, gap: f64) -> Result<Legislature> {
    if n_per_party == 0 {
        return Err(Error::invalid("each party needs at least one member"));
    }
    if !(gap > 0.0 && gap <= 1.0) {
        return Err(Error::invalid(format!("party gap {gap} outside (0, 1]")));
    }
    let width = (1.0 - gap) / 2.0;
    let start = (1.0 + gap) / 2.0;
    let step = |i: usize| {
        if n_per_party == 1 {
            0.0
        } else {
            width * i as f64 / (n_per_party - 1) as f64
        }
    };
    let left = (0..n_per_party).map(step);
    let right: Vec<f64> = if n_per_party == 1 {
        vec![1.0]
    } else {
        (0..n_per_party).map(|i| start + step(i)).collect()
    };
    let positions: Vec<f64> = left.chain(right).collect();
    let parties = (0..2 * n_per_party)
        .map(|i| if i < n_per_party { "L" } else { "R" }.to_string())
        .collect();
    Legislature::new(positions)?.with_parties(parties)
}
