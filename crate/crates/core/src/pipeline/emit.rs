//! CSV (and optional SVG) output of an analysis.
//!
//! Numbers are written with 12 significant digits in scientific notation so
//! output is locale independent and byte-stable across runs.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

use super::analysis::AnalysisResult;

pub const EIGENVALUES_FILE: &str = "eigenvalues.csv";
pub const EMBEDDING_FILE: &str = "embedding.csv";
pub const ORDER_FILE: &str = "order.csv";
pub const SCATTER_FILE: &str = "scatter.csv";
pub const SVG_FILE: &str = "horseshoe.svg";

/// `x` with 12 significant digits; negative zero prints as zero.
pub fn format_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn write_csv(path: &Path, rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row)
            .map_err(|e| Error::io(path, std::io::Error::other(e)))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io(path, std::io::Error::other(e.to_string())))?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn coord(r: &AnalysisResult, i: usize, j: usize) -> f64 {
    r.embedding.coords()[i].get(j).copied().unwrap_or(0.0)
}

/// Writes the four CSV files (and `horseshoe.svg` if `svg`) into `out_dir`,
/// creating it if needed. Returns the written paths.
pub fn emit(r: &AnalysisResult, out_dir: &Path, svg: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let path = |name: &str| out_dir.join(name);
    let n = r.ids.len();
    let mut written = Vec::new();

    let p = path(EIGENVALUES_FILE);
    let header = vec!["index".to_string(), "eigenvalue".to_string()];
    write_csv(
        &p,
        std::iter::once(header).chain(
            r.eigenvalues
                .iter()
                .enumerate()
                .map(|(j, v)| vec![(j + 1).to_string(), format_real(*v)]),
        ),
    )?;
    written.push(p);

    let p = path(EMBEDDING_FILE);
    let header = ["legislator_id", "c1", "c2", "c3"].map(String::from).to_vec();
    write_csv(
        &p,
        std::iter::once(header).chain((0..n).map(|i| {
            let mut row = vec![r.ids[i].clone()];
            row.extend((0..3).map(|j| format_real(coord(r, i, j))));
            row
        })),
    )?;
    written.push(p);

    let p = path(ORDER_FILE);
    let header = ["rank", "legislator_id", "group"].map(String::from).to_vec();
    write_csv(
        &p,
        std::iter::once(header).chain(r.order.iter().enumerate().map(|(k, &i)| {
            vec![(k + 1).to_string(), r.ids[i].clone(), r.groups[i].name().to_string()]
        })),
    )?;
    written.push(p);

    let p = path(SCATTER_FILE);
    let header = ["id", "party", "c1", "c2", "c3"].map(String::from).to_vec();
    write_csv(
        &p,
        std::iter::once(header).chain((0..n).map(|i| {
            let mut row = vec![r.ids[i].clone(), r.parties[i].clone()];
            row.extend((0..3).map(|j| format_real(coord(r, i, j))));
            row
        })),
    )?;
    written.push(p);

    if svg {
        let p = path(SVG_FILE);
        fs::write(&p, render_svg(r)).map_err(|e| Error::io(&p, e))?;
        written.push(p);
    }
    Ok(written)
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Scatter of the first two coordinates, one colour per party.
pub fn render_svg(r: &AnalysisResult) -> String {
    const SIZE: f64 = 480.0;
    const MARGIN: f64 = 24.0;
    let n = r.ids.len();
    let xs: Vec<f64> = (0..n).map(|i| coord(r, i, 0)).collect();
    let ys: Vec<f64> = (0..n).map(|i| coord(r, i, 1)).collect();
    let range = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, if hi > lo { hi - lo } else { 1.0 })
    };
    let (x0, dx) = range(&xs);
    let (y0, dy) = range(&ys);
    let span = SIZE - 2.0 * MARGIN;

    let mut parties: Vec<&str> = r.parties.iter().map(String::as_str).collect();
    parties.sort_unstable();
    parties.dedup();

    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );
    for i in 0..n {
        let colour = parties
            .iter()
            .position(|p| *p == r.parties[i])
            .map_or(PALETTE[0], |k| PALETTE[k % PALETTE.len()]);
        let cx = MARGIN + span * (xs[i] - x0) / dx;
        let cy = SIZE - MARGIN - span * (ys[i] - y0) / dy;
        out.push_str(&format!(
            "<circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"2.5\" fill=\"{colour}\"><title>{}</title></circle>\n",
            escape(&r.ids[i])
        ));
    }
    out.push_str("</svg>\n");
    out
}
