use serde::{Deserialize, Serialize};

use super::ks::ks_statistic;
use crate::data::{correlation_matrix, summarize, CorrelationMatrix, Dataset};
use crate::error::{Error, Result};
use crate::numerics::RngStream;

pub const DEFAULT_BINS: usize = 20;
pub const DEFAULT_SCATTER_CAP: usize = 1000;
pub const DEFAULT_SCATTER_SEED: u64 = 0x5ca7_7e25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityOptions {
    pub bins: usize,
    pub scatter_cap: usize,
    pub seed: u64,
}

impl Default for FidelityOptions {
    fn default() -> Self {
        Self {
            bins: DEFAULT_BINS,
            scatter_cap: DEFAULT_SCATTER_CAP,
            seed: DEFAULT_SCATTER_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnFidelity {
    pub name: String,
    pub real_mean: f64,
    pub synth_mean: f64,
    pub mean_diff: f64,
    pub real_std: f64,
    pub synth_std: f64,
    pub std_diff: f64,
    pub ks: f64,
}

/// Shared-edge histogram of one column for both datasets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub column: String,
    pub edges: Vec<f64>,
    pub real_counts: Vec<usize>,
    pub synth_counts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterSample {
    pub real: Vec<Vec<f64>>,
    pub synth: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub real_rows: usize,
    pub synth_rows: usize,
    pub real_corr: CorrelationMatrix,
    pub synth_corr: CorrelationMatrix,
    pub corr_max_abs_diff: f64,
    pub columns: Vec<ColumnFidelity>,
    pub histograms: Vec<Histogram>,
    pub scatter: ScatterSample,
}

impl FidelityReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn max_ks(&self) -> f64 {
        self.columns.iter().map(|c| c.ks).fold(0.0, f64::max)
    }
}

pub(crate) fn check_schema(real: &Dataset, synth: &Dataset) -> Result<()> {
    if real.same_schema(synth) {
        return Ok(());
    }
    let only_real: Vec<&String> = real
        .names()
        .iter()
        .filter(|n| !synth.names().contains(n))
        .collect();
    let only_synth: Vec<&String> = synth
        .names()
        .iter()
        .filter(|n| !real.names().contains(n))
        .collect();
    Err(Error::Schema(format!(
        "column mismatch: real-only {only_real:?}, synthetic-only {only_synth:?}, real order {:?}, synthetic order {:?}",
        real.names(),
        synth.names()
    )))
}

/// Equal-width bins spanning the union range of both samples.
pub fn shared_histogram(column: &str, real: &[f64], synth: &[f64], bins: usize) -> Histogram {
    let bins = bins.max(1);
    let (mut lo, mut hi) = real
        .iter()
        .chain(synth)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        lo = 0.0;
        hi = 1.0;
    } else if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins)
        .map(|i| if i == bins { hi } else { lo + width * i as f64 })
        .collect();
    let count = |xs: &[f64]| {
        let mut c = vec![0usize; bins];
        for &v in xs {
            let idx = (((v - lo) / (hi - lo)) * bins as f64).floor() as usize;
            c[idx.min(bins - 1)] += 1;
        }
        c
    };
    Histogram {
        column: column.to_string(),
        edges,
        real_counts: count(real),
        synth_counts: count(synth),
    }
}

/// Up to `cap` row indices chosen without replacement, in ascending order.
pub(crate) fn subsample_indices(n: usize, cap: usize, seed: u64) -> Vec<usize> {
    if n <= cap {
        return (0..n).collect();
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut s = RngStream::new(seed);
    for i in 0..cap {
        let j = i + s.next_below((n - i) as u64) as usize;
        idx.swap(i, j);
    }
    let mut chosen = idx[..cap].to_vec();
    chosen.sort_unstable();
    chosen
}

pub fn fidelity_report(real: &Dataset, synth: &Dataset) -> Result<FidelityReport> {
    fidelity_report_with(real, synth, &FidelityOptions::default())
}

pub fn fidelity_report_with(
    real: &Dataset,
    synth: &Dataset,
    opts: &FidelityOptions,
) -> Result<FidelityReport> {
    check_schema(real, synth)?;
    let real_corr = correlation_matrix(real)?;
    let synth_corr = correlation_matrix(synth)?;
    let corr_max_abs_diff = real_corr.max_abs_diff(&synth_corr)?;

    let mut columns = Vec::with_capacity(real.n_cols());
    let mut histograms = Vec::with_capacity(real.n_cols());
    for (name, (rc, sc)) in real
        .names()
        .iter()
        .zip(real.columns().iter().zip(synth.columns()))
    {
        let rs = summarize(name, rc)?;
        let ss = summarize(name, sc)?;
        columns.push(ColumnFidelity {
            name: name.clone(),
            real_mean: rs.mean,
            synth_mean: ss.mean,
            mean_diff: ss.mean - rs.mean,
            real_std: rs.std,
            synth_std: ss.std,
            std_diff: ss.std - rs.std,
            ks: ks_statistic(rc, sc)?,
        });
        histograms.push(shared_histogram(name, rc, sc, opts.bins));
    }

    let pick = |d: &Dataset| -> Vec<Vec<f64>> {
        subsample_indices(d.n_rows(), opts.scatter_cap, opts.seed)
            .into_iter()
            .map(|i| d.row(i))
            .collect()
    };
    Ok(FidelityReport {
        real_rows: real.n_rows(),
        synth_rows: synth.n_rows(),
        real_corr,
        synth_corr,
        corr_max_abs_diff,
        columns,
        histograms,
        scatter: ScatterSample {
            real: pick(real),
            synth: pick(synth),
        },
    })
}
