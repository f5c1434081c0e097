//! Rank agreement between a seriation and external scores.

use std::collections::HashMap;
use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub spearman: f64,
    pub kendall: f64,
    pub joined: usize,
    /// Set when either side is constant, in which case both correlations are
    /// reported as 0.
    pub degenerate_ties: bool,
}

/// Mid-ranks starting at 1; tied values share the mean of their positions.
pub fn mid_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut ranks = vec![0.0; x.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && x[idx[end]] == x[idx[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman correlation on mid-ranks; `None` if either side is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    pearson(&mid_ranks(x), &mid_ranks(y))
}

/// Kendall tau-b; `None` if either side is constant.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (mut concordant, mut discordant, mut tie_x, mut tie_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let dx = x[i].total_cmp(&x[j]) as i64;
            let dy = y[i].total_cmp(&y[j]) as i64;
            match (dx, dy) {
                (0, 0) => {}
                (0, _) => tie_x += 1,
                (_, 0) => tie_y += 1,
                _ if dx == dy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let n1 = (concordant + discordant + tie_x) as f64;
    let n2 = (concordant + discordant + tie_y) as f64;
    (n1 > 0.0 && n2 > 0.0).then(|| (concordant - discordant) as f64 / (n1 * n2).sqrt())
}

/// Correlates `rank` with `score` over the ids present in both maps, in the
/// order of `ranks`.
pub fn compare_scores(ranks: &[(String, f64)], scores: &HashMap<String, f64>) -> Result<ComparisonReport> {
    let (x, y): (Vec<f64>, Vec<f64>) = ranks
        .iter()
        .filter_map(|(id, r)| scores.get(id).map(|s| (*r, *s)))
        .unzip();
    if x.is_empty() {
        return Err(Error::EmptyJoin);
    }
    let (s, k) = (spearman(&x, &y), kendall_tau_b(&x, &y));
    Ok(ComparisonReport {
        spearman: s.unwrap_or(0.0),
        kendall: k.unwrap_or(0.0),
        joined: x.len(),
        degenerate_ties: s.is_none() || k.is_none(),
    })
}

fn read_table(path: &Path, key: &str, value: &str) -> Result<Vec<(String, f64)>> {
    let source = path.display().to_string();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(file);
    let err = |line: u64, column: usize, message: String| Error::Parse {
        path: source.clone(),
        line,
        column,
        message,
    };
    let headers = rdr.headers().map_err(|e| err(1, 0, e.to_string()))?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| err(1, 1, format!("missing column `{name}`")))
    };
    let (ki, vi) = (find(key)?, find(value)?);
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| err(e.position().map_or(0, |p| p.line()), 0, e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let raw = record.get(vi).ok_or_else(|| err(line, vi + 1, "missing field".into()))?;
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| err(line, vi + 1, format!("`{raw}` is not a number")))?;
        if !v.is_finite() {
            return Err(err(line, vi + 1, format!("`{raw}` is not finite")));
        }
        out.push((record[ki].to_string(), v));
    }
    Ok(out)
}

/// Reads `legislator_id` and `rank` from an `order.csv`.
pub fn read_order(path: &Path) -> Result<Vec<(String, f64)>> {
    read_table(path, "legislator_id", "rank")
}

/// Reads a `legislator_id,score` file.
pub fn read_scores(path: &Path) -> Result<HashMap<String, f64>> {
    Ok(read_table(path, "legislator_id", "score")?.into_iter().collect())
}

pub fn compare_files(order: &Path, scores: &Path) -> Result<ComparisonReport> {
    compare_scores(&read_order(order)?, &read_scores(scores)?)
}
