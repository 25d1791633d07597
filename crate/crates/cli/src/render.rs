//! Text, CSV and JSON rendering. Every format is a pure function of the
//! computed values, so identical runs print identical bytes.

use serde::Serialize;

use crate::error::{usage, CliError};

/// `None` for the infinite upper bounds, so they become `null` / empty.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Shortest decimal that parses back to the same double; empty if absent.
pub fn full(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn fixed(x: Option<f64>, decimals: usize) -> String {
    match x {
        Some(v) => format!("{v:.decimals$}"),
        None => "inf".into(),
    }
}

#[derive(Serialize)]
struct Envelope<'a, C, R> {
    config: &'a C,
    results: &'a R,
}

pub fn json<C: Serialize, R: Serialize>(config: &C, results: &R) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(&Envelope { config, results })
        .map_err(|e| usage(format!("could not encode JSON: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let fail = |e: csv::Error| usage(format!("could not encode CSV: {e}"));
    writer.write_record(header).map_err(fail)?;
    for row in rows {
        writer.write_record(row).map_err(fail)?;
    }
    let bytes = writer.into_inner().map_err(|e| usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| usage(e.to_string()))
}

/// Column-aligned plain text; the first column is left aligned, the rest
/// right aligned.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut out = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            let pad = w - cell.chars().count();
            if i == 0 {
                out.push_str(cell);
                out.push_str(&" ".repeat(pad));
            } else {
                out.push_str("  ");
                out.push_str(&" ".repeat(pad));
                out.push_str(cell);
            }
        }
        out.trim_end().to_string() + "\n"
    };
    let mut text = line(header.to_vec());
    for row in rows {
        text += &line(row.iter().map(String::as_str).collect());
    }
    text
}
