//! Roll-call vote files.
//!
//! ```text
//! legislator_id,party,B1,B2,...
//! A,R,Y,N,...
//! ```
//!
//! Cells are `Y`, `N` or `X` (did not vote). Present votes have to be mapped
//! to `X` before loading; `P` is rejected.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::cutpoint::{Legislature, Vote, VoteMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RollCallDataset {
    votes: VoteMatrix,
    parties: Vec<String>,
    participation: Vec<f64>,
    dropped: Vec<String>,
}

impl RollCallDataset {
    pub fn new(votes: VoteMatrix, parties: Vec<String>) -> Result<Self> {
        if parties.len() != votes.n_legislators() {
            return Err(Error::DimensionMismatch {
                expected: votes.n_legislators(),
                actual: parties.len(),
            });
        }
        let participation = (0..votes.n_legislators()).map(|i| votes.participation(i)).collect();
        Ok(Self {
            votes,
            parties,
            participation,
            dropped: Vec::new(),
        })
    }

    /// Wraps simulated votes, taking party labels from the legislature when it
    /// has them and `NA` otherwise.
    pub fn from_simulation(leg: &Legislature, votes: VoteMatrix) -> Result<Self> {
        let parties = match leg.parties() {
            Some(p) => p.to_vec(),
            None => vec!["NA".to_string(); leg.len()],
        };
        Self::new(votes, parties)
    }

    pub fn votes(&self) -> &VoteMatrix {
        &self.votes
    }

    pub fn ids(&self) -> &[String] {
        self.votes.legislator_ids()
    }

    pub fn parties(&self) -> &[String] {
        &self.parties
    }

    pub fn participation(&self) -> &[f64] {
        &self.participation
    }

    /// Ids removed by [`filter_participation`], in file order.
    pub fn dropped(&self) -> &[String] {
        &self.dropped
    }

    pub fn len(&self) -> usize {
        self.parties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parties.is_empty()
    }
}

fn parse_error(source: &str, line: u64, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: source.to_string(),
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_rollcall(path: &Path) -> Result<RollCallDataset> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_rollcall_from(file, &path.display().to_string())
}

/// Parses vote data from `reader`; `source` names it in error messages.
pub fn parse_rollcall_from<R: Read>(reader: R, source: &str) -> Result<RollCallDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();

    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_error(e, source))?,
        None => return Err(parse_error(source, 1, 1, "empty file: missing header")),
    };
    if header.get(0) != Some("legislator_id") {
        return Err(parse_error(source, 1, 1, "header must start with `legislator_id`"));
    }
    if header.get(1) != Some("party") {
        return Err(parse_error(source, 1, 2, "second header column must be `party`"));
    }
    let bills: Vec<String> = header.iter().skip(2).map(str::to_string).collect();
    if bills.is_empty() {
        return Err(parse_error(source, 1, 3, "header lists no bills"));
    }
    for (k, b) in bills.iter().enumerate() {
        if b.is_empty() {
            return Err(parse_error(source, 1, k + 3, "empty bill id"));
        }
        if bills[..k].contains(b) {
            return Err(parse_error(source, 1, k + 3, format!("duplicate bill id `{b}`")));
        }
    }

    let mut ids: Vec<String> = Vec::new();
    let mut parties = Vec::new();
    let mut votes = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(e, source))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != bills.len() + 2 {
            return Err(parse_error(
                source,
                line,
                record.len().min(bills.len() + 2) + 1,
                format!("expected {} fields, found {}", bills.len() + 2, record.len()),
            ));
        }
        let id = &record[0];
        if id.is_empty() {
            return Err(parse_error(source, line, 1, "empty legislator id"));
        }
        if ids.iter().any(|x| x == id) {
            return Err(parse_error(source, line, 1, format!("duplicate legislator id `{id}`")));
        }
        for (k, cell) in record.iter().skip(2).enumerate() {
            let vote = Vote::from_symbol(cell).ok_or_else(|| {
                parse_error(source, line, k + 3, format!("unknown vote symbol `{cell}` (expected Y, N or X)"))
            })?;
            votes.push(vote);
        }
        ids.push(id.to_string());
        parties.push(record[1].to_string());
    }
    if ids.is_empty() {
        return Err(parse_error(source, 2, 1, "no legislator rows"));
    }
    RollCallDataset::new(VoteMatrix::new(ids, bills, votes)?, parties)
}

fn csv_error(e: csv::Error, source: &str) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    parse_error(source, line, 0, e.to_string())
}

/// Writes `d` in the vote-file format.
pub fn write_rollcall<W: Write>(d: &RollCallDataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let v = d.votes();
    let io = |e: csv::Error| Error::invalid(format!("write failed: {e}"));
    let mut header = vec!["legislator_id".to_string(), "party".to_string()];
    header.extend(v.bill_ids().iter().cloned());
    w.write_record(&header).map_err(io)?;
    for i in 0..d.len() {
        let mut row = vec![d.ids()[i].clone(), d.parties()[i].clone()];
        row.extend(v.row(i).iter().map(|x| x.symbol().to_string()));
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::invalid(format!("write failed: {e}")))
}

pub fn save_rollcall(d: &RollCallDataset, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_rollcall(d, file)
}

/// Slack for comparing participation with the threshold, so that e.g. 9 of
/// 10 votes passes a 0.9 cut despite rounding.
const PARTICIPATION_SLACK: f64 = 1e-12;

/// Keeps legislators whose participation is at least `min_fraction`.
pub fn filter_participation(d: &RollCallDataset, min_fraction: f64) -> Result<RollCallDataset> {
    if !(0.0..=1.0).contains(&min_fraction) {
        return Err(Error::invalid(format!("participation threshold {min_fraction} outside [0, 1]")));
    }
    let (keep, drop): (Vec<usize>, Vec<usize>) =
        (0..d.len()).partition(|&i| d.participation[i] + PARTICIPATION_SLACK >= min_fraction);
    if keep.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut dropped = d.dropped.clone();
    dropped.extend(drop.iter().map(|&i| d.ids()[i].clone()));
    Ok(RollCallDataset {
        votes: d.votes.select_rows(&keep),
        parties: keep.iter().map(|&i| d.parties[i].clone()).collect(),
        participation: keep.iter().map(|&i| d.participation[i]).collect(),
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RollCallDataset> {
        parse_rollcall_from(text.as_bytes(), "mem")
    }

    #[test]
    fn parses_small_file() {
        let d = parse("legislator_id,party,B1,B2\nA,R,Y,N\nB,D,N,N").unwrap();
        assert_eq!(d.ids(), &["A", "B"]);
        assert_eq!(d.parties(), &["R", "D"]);
        let v = d.votes();
        let values: Vec<Vec<f64>> = (0..2).map(|i| v.row(i).iter().map(|x| x.value()).collect()).collect();
        assert_eq!(values, vec![vec![0.5, -0.5], vec![-0.5, -0.5]]);
        assert_eq!(d.participation(), &[1.0, 1.0]);
    }

    #[test]
    fn trailing_newline_optional() {
        let a = parse("legislator_id,party,B1\nA,R,Y\n").unwrap();
        let b = parse("legislator_id,party,B1\nA,R,Y").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_present_vote_with_location() {
        let err = parse("legislator_id,party,B1,B2\nA,R,Y,N\nB,D,N,P\n").unwrap_err();
        match err {
            Error::Parse { line, column, message, .. } => {
                assert_eq!((line, column), (3, 4));
                assert!(message.contains("`P`"));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("id,party,B1\nA,R,Y"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse("legislator_id,party\nA,R"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(
            parse("legislator_id,party,B1,B2\nA,R,Y\n"),
            Err(Error::Parse { line: 2, column: 4, .. })
        ));
        assert!(matches!(
            parse("legislator_id,party,B1\nA,R,Y\nA,D,N\n"),
            Err(Error::Parse { line: 3, column: 1, .. })
        ));
        assert!(matches!(parse("legislator_id,party,B1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let text = "legislator_id,party,B1,B2,B3\nA,R,Y,N,X\nB,D,N,N,Y\nC,I,X,X,Y\n";
        let d = parse(text).unwrap();
        let mut out = Vec::new();
        write_rollcall(&d, &mut out).unwrap();
        assert_eq!(String::from_utf8(out.clone()).unwrap(), text);
        assert_eq!(parse_rollcall_from(out.as_slice(), "again").unwrap(), d);
    }

    #[test]
    fn participation_filter() {
        let mut text = String::from("legislator_id,party");
        for k in 1..=10 {
            text.push_str(&format!(",B{k}"));
        }
        text.push('\n');
        text.push_str("full,R,Y,Y,Y,Y,Y,Y,Y,Y,Y,Y\n");
        text.push_str("nine,R,Y,Y,Y,Y,Y,Y,Y,Y,Y,X\n");
        text.push_str("eight,D,Y,Y,Y,Y,Y,Y,Y,Y,X,X\n");
        let d = parse(&text).unwrap();
        assert_eq!(filter_participation(&d, 0.0).unwrap(), d);
        let f = filter_participation(&d, 0.9).unwrap();
        assert_eq!(f.ids(), &["full", "nine"]);
        assert_eq!(f.dropped(), &["eight"]);
        assert_eq!(f.participation(), &[1.0, 0.9]);
        assert!(matches!(
            filter_participation(&parse("legislator_id,party,B1\nA,R,X\n").unwrap(), 0.5),
            Err(Error::EmptyDataset)
        ));
        assert!(filter_participation(&d, 1.5).is_err());
    }
}
