//! Delimited-text ingestion: header row required, first column labels the
//! observations, any named or 0-based-indexed column carries the values.

use std::path::Path;
use std::str::FromStr;

use volburg::series::PriceSeries;

use crate::error::{CliError, Result};

/// A column picked either by header name or by 0-based index.
#[derive(Debug, Clone)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

impl ColumnSelector {
    fn resolve(&self, headers: &csv::StringRecord) -> Result<usize> {
        match self {
            ColumnSelector::Index(i) => {
                if *i < headers.len() {
                    Ok(*i)
                } else {
                    Err(CliError::Schema(format!(
                        "column index {i} out of range (file has {} columns)",
                        headers.len()
                    )))
                }
            }
            ColumnSelector::Name(name) => headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| CliError::Schema(format!("column '{name}' not found in header"))),
        }
    }
}

fn open_reader(path: &Path, delim: u8) -> Result<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .delimiter(delim)
        .has_headers(true)
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => CliError::Io(format!("{}: {e}", path.display())),
            _ => CliError::Schema(format!("{}: {e}", path.display())),
        })
}

/// Row labels plus `(line number, value)` pairs from the selected column.
type ParsedRows = (Vec<String>, Vec<(u64, f64)>);

fn parse_rows(path: &Path, column: &ColumnSelector, delim: u8) -> Result<ParsedRows> {
    let mut reader = open_reader(path, delim)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?
        .clone();
    let idx = column.resolve(&headers)?;

    let mut labels = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        let label = record.get(0).unwrap_or("").to_string();
        let cell = record
            .get(idx)
            .ok_or_else(|| CliError::Schema(format!("line {line}: missing column {idx}")))?
            .trim();
        if cell.is_empty() {
            return Err(CliError::Schema(format!("line {line}: empty value cell")));
        }
        let value: f64 = cell
            .parse()
            .map_err(|_| CliError::Schema(format!("line {line}: unparseable value '{cell}'")))?;
        labels.push(label);
        values.push((line, value));
    }
    Ok((labels, values))
}

/// Loads a strictly positive price column into a `PriceSeries`; the asset
/// name is the file stem.
pub fn load_csv(path: &Path, column: &ColumnSelector, delim: u8) -> Result<PriceSeries> {
    let (labels, rows) = parse_rows(path, column, delim)?;
    // "NaN" parses as a float, so it needs an explicit rejection.
    if let Some((line, value)) = rows.iter().find(|(_, v)| *v <= 0.0 || v.is_nan()) {
        return Err(CliError::Core(volburg::Error::InvalidInput(format!(
            "line {line}: non-positive price {value}"
        ))));
    }
    if rows.len() < 2 {
        return Err(CliError::Core(volburg::Error::InsufficientData(format!(
            "{}: need at least 2 data rows, got {}",
            path.display(),
            rows.len()
        ))));
    }
    let prices: Vec<f64> = rows.into_iter().map(|(_, v)| v).collect();
    Ok(PriceSeries::new(labels, prices, asset_name(path))?)
}

/// Loads a raw value column (sign-unconstrained), for series that are not
/// prices — generator output, pre-computed returns, level paths.
pub fn load_series(path: &Path, column: &ColumnSelector, delim: u8) -> Result<Vec<f64>> {
    let (_, rows) = parse_rows(path, column, delim)?;
    Ok(rows.into_iter().map(|(_, v)| v).collect())
}

pub fn asset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
