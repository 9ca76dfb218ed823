use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::compare::ComparisonRow;
use super::mae::ModelErrorSummary;
use crate::error::{Error, Result};
use crate::montecarlo::AggregateResult;
use crate::scenarios::ReferenceRow;

/// Survivor columns per army in the reference layout.
pub const SURVIVOR_COLUMNS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!(
                "unknown format `{s}` (expected table, csv or json)"
            ))),
        }
    }
}

/// One line in the reference-table layout, either simulated or published.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub round: Option<u8>,
    pub kind: String,
    pub pairing: String,
    pub survivors1: Vec<f64>,
    pub survivors2: Vec<f64>,
    pub win1: f64,
    pub win2: f64,
}

fn padded(values: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().collect();
    if v.len() < SURVIVOR_COLUMNS {
        v.resize(SURVIVOR_COLUMNS, 0.0);
    }
    v
}

impl ResultRow {
    /// Survivor columns are the win-conditioned means; an army that never
    /// won shows zeros.
    pub fn from_result(result: &AggregateResult) -> Self {
        let id = result.spec.matchup.id;
        let n1 = result.spec.matchup.army1.len();
        let n2 = result.spec.matchup.army2.len();
        let s1 = result
            .mean_survivors1
            .clone()
            .unwrap_or_else(|| vec![0.0; n1]);
        let s2 = result
            .mean_survivors2
            .clone()
            .unwrap_or_else(|| vec![0.0; n2]);
        ResultRow {
            round: id.map(|i| i.round),
            kind: result.spec.model.label().to_owned(),
            pairing: id.map_or_else(|| "custom".to_owned(), |i| i.pairing.to_string()),
            survivors1: padded(s1),
            survivors2: padded(s2),
            win1: result.reported_win1,
            win2: result.reported_win2,
        }
    }

    pub fn from_reference(row: &ReferenceRow) -> Self {
        ResultRow {
            round: Some(row.round),
            kind: row.kind.to_string(),
            pairing: row.pairing.to_string(),
            survivors1: row.survivors1.iter().map(|&n| f64::from(n)).collect(),
            survivors2: row.survivors2.iter().map(|&n| f64::from(n)).collect(),
            win1: row.win1(),
            win2: row.win2(),
        }
    }
}

fn survivor_width(rows: &[ResultRow]) -> (usize, usize) {
    rows.iter()
        .fold((SURVIVOR_COLUMNS, SURVIVOR_COLUMNS), |(a, b), r| {
            (a.max(r.survivors1.len()), b.max(r.survivors2.len()))
        })
}

fn result_headers(w1: usize, w2: usize) -> Vec<String> {
    let mut h = vec!["round".to_owned(), "type".to_owned(), "match".to_owned()];
    h.extend((1..=w1).map(|i| format!("1-{i}")));
    h.extend((1..=w2).map(|i| format!("2-{i}")));
    h.push("1-%".to_owned());
    h.push("2-%".to_owned());
    h
}

fn result_cells(
    row: &ResultRow,
    w1: usize,
    w2: usize,
    survivor: impl Fn(f64) -> String,
) -> Vec<String> {
    let mut cells = vec![
        row.round.map_or_else(|| "-".to_owned(), |r| r.to_string()),
        row.kind.clone(),
        row.pairing.clone(),
    ];
    let col = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    cells.extend((0..w1).map(|i| survivor(col(&row.survivors1, i))));
    cells.extend((0..w2).map(|i| survivor(col(&row.survivors2, i))));
    cells.push(format!("{:.2}", row.win1));
    cells.push(format!("{:.2}", row.win2));
    cells
}

/// Win rates with 2 decimals; survivors as integers in the table view and
/// with 1 decimal in CSV.
pub fn render_results(rows: &[ResultRow], format: Format) -> Result<String> {
    let (w1, w2) = survivor_width(rows);
    let headers = result_headers(w1, w2);
    match format {
        Format::Table => {
            let body = rows
                .iter()
                .map(|r| result_cells(r, w1, w2, |v| format!("{:.0}", v.round())))
                .collect::<Vec<_>>();
            Ok(text_table(&headers, &body))
        }
        Format::Csv => {
            let body = rows
                .iter()
                .map(|r| result_cells(r, w1, w2, |v| format!("{v:.1}")))
                .collect::<Vec<_>>();
            csv_string(&headers, &body)
        }
        Format::Json => to_json(rows),
    }
}

/// Reads back a CSV produced by [`render_results`].
pub fn parse_results_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let w1 = headers
        .iter()
        .filter(|h| h.starts_with("1-") && *h != "1-%")
        .count();
    let w2 = headers
        .iter()
        .filter(|h| h.starts_with("2-") && *h != "2-%")
        .count();
    if headers.len() != 5 + w1 + w2 {
        return Err(Error::Parse("unexpected result columns".into()));
    }
    let num = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Parse(format!("bad number `{s}`")))
    };
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let field = |i: usize| record.get(i).unwrap_or_default();
        let round = match field(0) {
            "-" => None,
            r => Some(
                r.parse()
                    .map_err(|_| Error::Parse(format!("bad round `{r}`")))?,
            ),
        };
        rows.push(ResultRow {
            round,
            kind: field(1).to_owned(),
            pairing: field(2).to_owned(),
            survivors1: (3..3 + w1).map(|i| num(field(i))).collect::<Result<_>>()?,
            survivors2: (3 + w1..3 + w1 + w2)
                .map(|i| num(field(i)))
                .collect::<Result<_>>()?,
            win1: num(field(3 + w1 + w2))?,
            win2: num(field(4 + w1 + w2))?,
        });
    }
    Ok(rows)
}

#[derive(Serialize)]
struct ComparisonView<'a> {
    round: u8,
    #[serde(rename = "match")]
    pairing: String,
    model: &'a str,
    simulated_win1: f64,
    reference_win1: f64,
    test_win1: f64,
    delta_reference: f64,
    delta_test: f64,
    reference_delta_test: f64,
}

pub fn render_comparison(rows: &[ComparisonRow], format: Format) -> Result<String> {
    let views: Vec<_> = rows
        .iter()
        .map(|r| ComparisonView {
            round: r.id.round,
            pairing: r.id.pairing.to_string(),
            model: r.model.label(),
            simulated_win1: r.simulated_win1,
            reference_win1: r.reference_win1,
            test_win1: r.test_win1,
            delta_reference: r.delta_reference(),
            delta_test: r.delta_test(),
            reference_delta_test: r.reference_delta_test(),
        })
        .collect();
    let headers: Vec<String> = [
        "round",
        "match",
        "model",
        "sim 1-%",
        "ref 1-%",
        "test 1-%",
        "|sim-ref|",
        "|sim-test|",
        "|ref-test|",
    ]
    .map(str::to_owned)
    .to_vec();
    let body: Vec<Vec<String>> = views
        .iter()
        .map(|v| {
            vec![
                v.round.to_string(),
                v.pairing.clone(),
                v.model.to_owned(),
                format!("{:.2}", v.simulated_win1),
                format!("{:.2}", v.reference_win1),
                format!("{:.2}", v.test_win1),
                format!("{:.2}", v.delta_reference),
                format!("{:.2}", v.delta_test),
                format!("{:.2}", v.reference_delta_test),
            ]
        })
        .collect();
    match format {
        Format::Table => Ok(text_table(&headers, &body)),
        Format::Csv => csv_string(&headers, &body),
        Format::Json => to_json(&views),
    }
}

const BAR_WIDTH: f64 = 50.0;

/// Per-model error, with a text bar chart in the table view.
pub fn render_mae(summary: &ModelErrorSummary, format: Format) -> Result<String> {
    let headers: Vec<String> = ["model", "matches", "mae"].map(str::to_owned).to_vec();
    let body: Vec<Vec<String>> = summary
        .models
        .values()
        .map(|e| {
            vec![
                e.model.label().to_owned(),
                e.matches.to_string(),
                format!("{:.4}", e.mae),
            ]
        })
        .collect();
    match format {
        Format::Table => {
            let mut out = text_table(&headers, &body);
            out.push('\n');
            for e in summary.models.values() {
                let bar = "#".repeat((e.mae * BAR_WIDTH).round() as usize);
                writeln!(out, "{} |{bar} {:.3}", e.model.label(), e.mae).unwrap();
            }
            Ok(out)
        }
        Format::Csv => csv_string(&headers, &body),
        Format::Json => to_json(summary),
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_string(headers: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| Error::Parse(e.to_string());
    writer.write_record(headers).map_err(wrap)?;
    for row in rows {
        writer.write_record(row).map_err(wrap)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn text_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(headers);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}
