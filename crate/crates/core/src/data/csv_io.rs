//! CSV ingestion and emission. Comma separated, mandatory header row, LF or
//! CRLF accepted on read, LF written. Numbers use '.' as the decimal point.

use std::io::{Read, Write};
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};

pub fn load_csv<R: Read>(source: R) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);

    let header = reader.headers().map_err(csv_error)?.clone();
    if header.is_empty() {
        return Err(Error::Schema("missing header row".into()));
    }
    let names: Vec<String> = header.iter().map(str::to_string).collect();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::Schema(format!("header field {} is empty", i + 1)));
        }
        if names[..i].contains(name) {
            return Err(Error::Schema(format!("duplicate column name {name:?}")));
        }
    }

    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(csv_error)?;
        if record.len() != names.len() {
            return Err(Error::RaggedRow {
                row,
                expected: names.len(),
                found: record.len(),
            });
        }
        for ((field, name), col) in record.iter().zip(&names).zip(columns.iter_mut()) {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                row,
                column: name.clone(),
                message: format!("{field:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    column: name.clone(),
                    message: format!("{field:?} is not a finite number"),
                });
            }
            col.push(v);
        }
    }
    Dataset::from_parts(names, columns)
}

pub fn load_csv_path(path: &Path) -> Result<Dataset> {
    let file = std::fs::File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    load_csv(std::io::BufReader::new(file))
}

fn csv_error(e: csv::Error) -> Error {
    let row = e.position().map_or(0, |p| p.record() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::Utf8 { err, .. } => Error::Parse {
            row,
            column: String::new(),
            message: format!("invalid UTF-8: {err}"),
        },
        other => Error::Parse {
            row,
            column: String::new(),
            message: format!("{other:?}"),
        },
    }
}

/// Shortest decimal text that parses back to exactly `v` (at most 17
/// significant digits). Scientific notation outside [1e-5, 1e16).
pub fn format_value(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn write_csv<W: Write>(d: &Dataset, sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(d.names()).map_err(csv_error)?;
    let mut buf: Vec<String> = Vec::with_capacity(d.n_cols());
    for i in 0..d.n_rows() {
        buf.clear();
        buf.extend(d.columns().iter().map(|c| format_value(c[i])));
        w.write_record(&buf).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_path(d: &Dataset, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    write_csv(d, std::io::BufWriter::new(file))
}
