//! Text formats for simplices and balls.
//!
//! A simplex is either CSV (one vertex per row, n columns, no header) or
//! JSON `{"vertices": [[...], ...]}`. A ball is JSON
//! `{"center": [...], "radius": r}` or the compact string `"c1,...,cn;R"`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Ball, Simplex};

pub fn parse_simplex(text: &str) -> Result<Simplex> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(format!("simplex JSON: {e}")));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(format!("simplex CSV: {e}")))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|field| {
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!(
                        "simplex CSV row {}: not a number: {field:?}",
                        line + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("simplex CSV has no rows".into()));
    }
    Simplex::new(rows).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_simplex(path: &Path) -> Result<Simplex> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_simplex(&text)
}

/// Parses either the compact `"c1,...,cn;R"` form or a JSON object.
pub fn parse_ball(text: &str) -> Result<Ball> {
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(format!("ball JSON: {e}")));
    }
    let (center, radius) = text.split_once(';').ok_or_else(|| {
        Error::Parse(format!("ball must look like \"c1,...,cn;R\", got {text:?}"))
    })?;
    let center = center
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("ball center: not a number: {c:?}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    let radius = radius
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("ball radius: not a number: {radius:?}")))?;
    Ball::new(center, radius).map_err(|e| Error::Parse(e.to_string()))
}

/// Compact `"c1,...,cn;R"` form with shortest round-trip formatting.
pub fn format_ball(ball: &Ball) -> String {
    let center: Vec<String> = ball.center().iter().map(|c| format!("{c:?}")).collect();
    format!("{};{:?}", center.join(","), ball.radius())
}

/// CSV form of a simplex with shortest round-trip formatting.
pub fn format_simplex_csv(simplex: &Simplex) -> String {
    let mut out = String::new();
    for v in simplex.vertices() {
        let row: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
