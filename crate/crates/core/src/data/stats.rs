use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// Sample summary of one column. `std` uses the n - 1 denominator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

pub fn column_stats(d: &Dataset, name: &str) -> Result<SummaryStats> {
    summarize(name, d.column(name)?)
}

pub(crate) fn summarize(name: &str, xs: &[f64]) -> Result<SummaryStats> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "column {name:?} has {n} value(s); standard deviation needs at least 2"
        )));
    }
    let mean = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    let (min, max) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    Ok(SummaryStats {
        // Rounding can push the mean of a constant column off by an ulp.
        mean: mean.clamp(min, max),
        std: (ss / (n as f64 - 1.0)).sqrt(),
        min,
        max,
        n,
    })
}

pub(crate) fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn centered(xs: &[f64]) -> Vec<f64> {
    let m = mean(xs);
    xs.iter().map(|x| x - m).collect()
}

/// Sample covariance matrix (n - 1 normalization), columns in dataset order.
pub fn covariance_matrix(d: &Dataset) -> Result<Matrix> {
    let n = d.n_rows();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "covariance needs at least 2 rows, got {n}"
        )));
    }
    let centered: Vec<Vec<f64>> = d.columns().iter().map(|c| centered(c)).collect();
    let k = centered.len();
    let mut cov = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let s: f64 = centered[i]
                .iter()
                .zip(&centered[j])
                .map(|(a, b)| a * b)
                .sum();
            let v = s / (n as f64 - 1.0);
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    Ok(cov)
}

/// Pearson correlation of two equal-length sequences.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Shape(format!(
            "lengths {} and {} differ",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InsufficientData(
            "correlation needs at least 2 rows".into(),
        ));
    }
    let cx = centered(x);
    let cy = centered(y);
    let sxx: f64 = cx.iter().map(|a| a * a).sum();
    let syy: f64 = cy.iter().map(|a| a * a).sum();
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::DegenerateColumn(
            if sxx == 0.0 { "x" } else { "y" }.to_string(),
        ));
    }
    let sxy: f64 = cx.iter().zip(&cy).map(|(a, b)| a * b).sum();
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Pearson correlation matrix, `Cov(X, Y) / (sigma_X sigma_Y)`.
pub fn correlation_matrix(d: &Dataset) -> Result<CorrelationMatrix> {
    let cov = covariance_matrix(d)?;
    let k = cov.rows();
    for j in 0..k {
        if cov[(j, j)] == 0.0 {
            return Err(Error::DegenerateColumn(d.names()[j].clone()));
        }
    }
    let sd: Vec<f64> = (0..k).map(|j| cov[(j, j)].sqrt()).collect();
    let mut m = Matrix::identity(k);
    for i in 0..k {
        for j in i + 1..k {
            let r = (cov[(i, j)] / (sd[i] * sd[j])).clamp(-1.0, 1.0);
            m[(i, j)] = r;
            m[(j, i)] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels: d.names().to_vec(),
        entries: m,
    })
}

/// 1-based ranks with ties given their average rank.
pub fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && xs[order[end]] == xs[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            out[idx] = avg;
        }
        start = end;
    }
    out
}

/// Spearman rank correlation matrix (Pearson on average ranks).
pub fn spearman_matrix(d: &Dataset) -> Result<CorrelationMatrix> {
    let ranked: Vec<Vec<f64>> = d.columns().iter().map(|c| ranks(c)).collect();
    let ranked = Dataset::from_parts(d.names().to_vec(), ranked)?;
    correlation_matrix(&ranked)
}

/// Labeled k x k correlation matrix: symmetric, unit diagonal, entries in [-1, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCorrelation", into = "RawCorrelation")]
pub struct CorrelationMatrix {
    labels: Vec<String>,
    entries: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawCorrelation {
    labels: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl TryFrom<RawCorrelation> for CorrelationMatrix {
    type Error = Error;

    fn try_from(raw: RawCorrelation) -> Result<Self> {
        CorrelationMatrix::new(raw.labels, Matrix::from_rows(&raw.entries)?)
    }
}

impl From<CorrelationMatrix> for RawCorrelation {
    fn from(m: CorrelationMatrix) -> Self {
        RawCorrelation {
            entries: m.entries.to_rows(),
            labels: m.labels,
        }
    }
}

impl CorrelationMatrix {
    pub const SYMMETRY_TOL: f64 = 1e-12;

    pub fn new(labels: Vec<String>, entries: Matrix) -> Result<Self> {
        let k = labels.len();
        if entries.rows() != k || entries.cols() != k {
            return Err(Error::Shape(format!(
                "{k} labels for a {}x{} matrix",
                entries.rows(),
                entries.cols()
            )));
        }
        for i in 0..k {
            if (entries[(i, i)] - 1.0).abs() > Self::SYMMETRY_TOL {
                return Err(Error::Domain(format!(
                    "diagonal entry {i} is {}, expected 1",
                    entries[(i, i)]
                )));
            }
            for j in 0..k {
                let v = entries[(i, j)];
                if !(-1.0..=1.0).contains(&v) {
                    return Err(Error::Domain(format!(
                        "entry ({i},{j}) = {v} outside [-1, 1]"
                    )));
                }
            }
        }
        if !entries.is_symmetric(Self::SYMMETRY_TOL) {
            return Err(Error::Domain("correlation matrix is not symmetric".into()));
        }
        let mut entries = entries;
        for i in 0..k {
            entries[(i, i)] = 1.0;
        }
        Ok(Self { labels, entries })
    }

    pub fn identity(labels: Vec<String>) -> Self {
        let k = labels.len();
        Self {
            labels,
            entries: Matrix::identity(k),
        }
    }

    /// Builds from the strict upper triangle in row order: (0,1), (0,2), ..., (1,2), ...
    pub fn from_upper(labels: Vec<String>, upper: &[f64]) -> Result<Self> {
        let k = labels.len();
        if upper.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::Shape(format!(
                "{k} labels need {} upper-triangle entries, got {}",
                k * k.saturating_sub(1) / 2,
                upper.len()
            )));
        }
        let mut m = Matrix::identity(k);
        let mut it = upper.iter();
        for i in 0..k {
            for j in i + 1..k {
                let v = *it.next().expect("length checked");
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Self::new(labels, m)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Entry by column labels.
    pub fn between(&self, a: &str, b: &str) -> Result<f64> {
        let idx = |name: &str| {
            self.labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::UnknownColumn(name.to_string()))
        };
        Ok(self.entries[(idx(a)?, idx(b)?)])
    }

    pub fn max_abs_diff(&self, other: &CorrelationMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "cannot compare {}x{} with {}x{}",
                self.dim(),
                self.dim(),
                other.dim(),
                other.dim()
            )));
        }
        Ok(self.entries.max_abs_diff(&other.entries))
    }

    /// Largest |entry| off the diagonal.
    pub fn max_abs_off_diagonal(&self) -> f64 {
        let k = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    worst = worst.max(self.entries[(i, j)].abs());
                }
            }
        }
        worst
    }
}
