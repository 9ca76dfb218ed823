//! Published results for the benchmark matchups: in-engine test battles and
//! the four models' predictions, one row each per matchup.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matchup::{MatchupId, Pairing};
use crate::engine::ModelId;
use crate::error::{Error, Result};

const REFERENCE_TSV: &str = include_str!("../../data/reference.tsv");

pub const REFERENCE_ROWS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RowKind {
    Test,
    Model(ModelId),
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowKind::Test => f.write_str("Test"),
            RowKind::Model(m) => f.write_str(m.label()),
        }
    }
}

impl FromStr for RowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("test") {
            Ok(RowKind::Test)
        } else {
            s.parse().map(RowKind::Model)
        }
    }
}

/// One reference row. Win rates are stored in hundredths so comparisons over
/// the table are exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub round: u8,
    pub kind: RowKind,
    pub pairing: Pairing,
    pub survivors1: [u32; 4],
    pub survivors2: [u32; 4],
    pub win1_pct: u32,
    pub win2_pct: u32,
}

impl ReferenceRow {
    pub fn id(&self) -> MatchupId {
        MatchupId {
            round: self.round,
            pairing: self.pairing,
        }
    }

    pub fn win1(&self) -> f64 {
        f64::from(self.win1_pct) / 100.0
    }

    pub fn win2(&self) -> f64 {
        f64::from(self.win2_pct) / 100.0
    }
}

#[derive(Deserialize)]
struct RawRow {
    round: u8,
    #[serde(rename = "type")]
    kind: String,
    #[serde(rename = "match")]
    pairing: String,
    #[serde(rename = "1-1")]
    s11: u32,
    #[serde(rename = "1-2")]
    s12: u32,
    #[serde(rename = "1-3")]
    s13: u32,
    #[serde(rename = "1-4")]
    s14: u32,
    #[serde(rename = "2-1")]
    s21: u32,
    #[serde(rename = "2-2")]
    s22: u32,
    #[serde(rename = "2-3")]
    s23: u32,
    #[serde(rename = "2-4")]
    s24: u32,
    #[serde(rename = "1-%")]
    win1: String,
    #[serde(rename = "2-%")]
    win2: String,
}

fn hundredths(text: &str) -> Result<u32> {
    let bad = || Error::Reference(format!("bad win fraction `{text}`"));
    let (whole, frac) = text.split_once('.').ok_or_else(bad)?;
    if frac.len() != 2 {
        return Err(bad());
    }
    let whole: u32 = whole.parse().map_err(|_| bad())?;
    let frac: u32 = frac.parse().map_err(|_| bad())?;
    Ok(whole * 100 + frac)
}

/// Parses a reference table in the shipped tab-separated layout.
pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for raw in reader.deserialize::<RawRow>() {
        let raw = raw.map_err(|e| Error::Reference(e.to_string()))?;
        let row = ReferenceRow {
            round: raw.round,
            kind: raw.kind.parse()?,
            pairing: raw.pairing.parse()?,
            survivors1: [raw.s11, raw.s12, raw.s13, raw.s14],
            survivors2: [raw.s21, raw.s22, raw.s23, raw.s24],
            win1_pct: hundredths(&raw.win1)?,
            win2_pct: hundredths(&raw.win2)?,
        };
        if !(99..=101).contains(&(row.win1_pct + row.win2_pct)) {
            return Err(Error::Reference(format!(
                "{} {}: win rates sum to {}.{:02}",
                row.id(),
                row.kind,
                (row.win1_pct + row.win2_pct) / 100,
                (row.win1_pct + row.win2_pct) % 100
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Checks that every (round, kind, pairing) triple appears exactly once for
/// rounds 1 to 4.
pub fn check_complete(rows: &[ReferenceRow]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for row in rows {
        if !seen.insert((row.round, row.kind, row.pairing)) {
            return Err(Error::Reference(format!(
                "duplicate row {} {}",
                row.id(),
                row.kind
            )));
        }
    }
    for round in 1..=4 {
        for pairing in Pairing::ALL {
            let kinds = std::iter::once(RowKind::Test).chain(ModelId::ALL.map(RowKind::Model));
            for kind in kinds {
                if !seen.contains(&(round, kind, pairing)) {
                    return Err(Error::Reference(format!(
                        "missing row R{round} {pairing} {kind}"
                    )));
                }
            }
        }
    }
    if rows.len() != REFERENCE_ROWS {
        return Err(Error::Reference(format!(
            "expected {REFERENCE_ROWS} rows, found {}",
            rows.len()
        )));
    }
    Ok(())
}

/// The embedded reference table, in published order.
pub fn reference_table() -> Vec<ReferenceRow> {
    let rows = parse_reference(REFERENCE_TSV).expect("shipped reference table parses");
    check_complete(&rows).expect("shipped reference table is complete");
    rows
}

pub fn find_row(rows: &[ReferenceRow], id: MatchupId, kind: RowKind) -> Option<&ReferenceRow> {
    rows.iter().find(|r| r.id() == id && r.kind == kind)
}
