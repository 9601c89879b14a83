//! The tabular [`Dataset`] type, CSV I/O and covariance/correlation statistics.

mod csv_io;
mod stats;

pub use csv_io::{format_value, load_csv, load_csv_path, write_csv, write_csv_path};
pub(crate) use stats::summarize;
pub use stats::{
    column_stats, correlation_matrix, covariance_matrix, pearson, ranks, spearman_matrix,
    CorrelationMatrix, SummaryStats,
};

use crate::error::{Error, Result};

/// Named numeric columns of equal length. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    n_rows: usize,
}

impl Dataset {
    /// Builds a dataset from `(name, values)` pairs, checking names are unique
    /// and nonempty, lengths agree and every value is finite.
    pub fn new<S: Into<String>>(columns: Vec<(S, Vec<f64>)>) -> Result<Self> {
        let (names, columns): (Vec<String>, Vec<Vec<f64>>) =
            columns.into_iter().map(|(n, v)| (n.into(), v)).unzip();
        Self::from_parts(names, columns)
    }

    pub fn from_parts(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::Schema(format!(
                "{} names for {} columns",
                names.len(),
                columns.len()
            )));
        }
        validate_names(&names)?;
        let n_rows = columns.first().map_or(0, Vec::len);
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != n_rows {
                return Err(Error::Schema(format!(
                    "column {name:?} has {} values, expected {n_rows}",
                    col.len()
                )));
            }
            if let Some(pos) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::Domain(format!(
                    "column {name:?} row {} holds non-finite value {}",
                    pos + 1,
                    col[pos]
                )));
            }
        }
        Ok(Self {
            names,
            columns,
            n_rows,
        })
    }

    /// Builds a dataset from row-major records.
    pub fn from_rows(names: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let k = names.len();
        let mut columns = vec![Vec::with_capacity(rows.len()); k];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::RaggedRow {
                    row: i + 1,
                    expected: k,
                    found: row.len(),
                });
            }
            for (c, &v) in columns.iter_mut().zip(row) {
                c.push(v);
            }
        }
        Self::from_parts(names, columns)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n_rows == 0
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn column_at(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        Ok(&self.columns[self.column_index(name)?])
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.n_rows).map(move |i| self.row(i))
    }

    /// Same column names and order.
    pub fn same_schema(&self, other: &Dataset) -> bool {
        self.names == other.names
    }

    /// Replaces one column's values, keeping everything else.
    pub fn with_column(&self, name: &str, values: Vec<f64>) -> Result<Dataset> {
        let j = self.column_index(name)?;
        let mut columns = self.columns.clone();
        columns[j] = values;
        Dataset::from_parts(self.names.clone(), columns)
    }

    pub fn scaled(&self, factor: f64) -> Result<Dataset> {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|v| v * factor).collect())
            .collect();
        Dataset::from_parts(self.names.clone(), columns)
    }
}

fn validate_names(names: &[String]) -> Result<()> {
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::Schema(format!("column {} has an empty name", i + 1)));
        }
        if names[..i].contains(name) {
            return Err(Error::Schema(format!("duplicate column name {name:?}")));
        }
    }
    Ok(())
}
