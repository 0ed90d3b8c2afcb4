//! `label,value` CSV files.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use foamhw::SeasonalSeries;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: expected header `label,value`")]
    BadHeader { line: u64 },
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: value {value} is not strictly positive")]
    NonPositiveValue { line: u64, value: f64 },
    #[error("no data rows")]
    Empty,
    #[error("{0}")]
    Series(String),
}

pub fn load_csv(path: &Path, period: usize) -> Result<SeasonalSeries, CsvError> {
    let file = File::open(path).map_err(|source| match source.kind() {
        io::ErrorKind::NotFound => CsvError::FileNotFound(path.to_owned()),
        _ => CsvError::Io {
            path: path.to_owned(),
            source,
        },
    })?;
    read_csv(file, period)
}

pub fn read_csv<R: Read>(reader: R, period: usize) -> Result<SeasonalSeries, CsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| CsvError::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        if i == 0 {
            let header: Vec<&str> = record.iter().map(str::trim).collect();
            if header != ["label", "value"] {
                return Err(CsvError::BadHeader { line });
            }
            continue;
        }
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(CsvError::Parse {
                line,
                message: format!("expected 2 fields, found {}", record.len()),
            });
        }
        let raw = record[1].trim();
        let value: f64 = raw
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| CsvError::Parse {
                line,
                message: format!("`{raw}` is not a decimal number"),
            })?;
        if value <= 0.0 {
            return Err(CsvError::NonPositiveValue { line, value });
        }
        labels.push(record[0].trim().to_owned());
        values.push(value);
    }
    if values.is_empty() {
        return Err(CsvError::Empty);
    }
    SeasonalSeries::new(values, period, labels).map_err(|e| CsvError::Series(e.to_string()))
}

/// Writes a series with shortest round-trip decimal values.
pub fn write_csv<W: Write>(series: &SeasonalSeries, writer: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().from_writer(writer);
    w.write_record(["label", "value"])?;
    for (label, value) in series.labels().iter().zip(series.values()) {
        w.write_record([label.as_str(), &value.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
