//! Multivariate-normal, bootstrap-with-noise and Gaussian-copula generators.

use serde::{Deserialize, Serialize};

use crate::data::{summarize, CorrelationMatrix, Dataset};
use crate::defaults;
use crate::error::{Error, Result};
use crate::numerics::{
    beta_quantile, cholesky, cholesky_with_jitter, normal_cdf, LowerTriangular, RngStream,
};

fn factor(corr: &CorrelationMatrix, allow_jitter: bool) -> Result<LowerTriangular> {
    if allow_jitter {
        cholesky_with_jitter(corr.matrix()).map(|(l, _)| l)
    } else {
        cholesky(corr.matrix())
    }
}

/// Fills `k` columns of `n` correlated standard normals, `L z` per row.
fn correlated_normals(l: &LowerTriangular, n: usize, stream: &mut RngStream) -> Vec<Vec<f64>> {
    let k = l.dim();
    let mut cols = vec![Vec::with_capacity(n); k];
    let mut z = vec![0.0; k];
    let mut x = vec![0.0; k];
    for _ in 0..n {
        for zi in z.iter_mut() {
            *zi = stream.standard_normal();
        }
        l.mul_vec_into(&z, &mut x);
        for (c, &v) in cols.iter_mut().zip(&x) {
            c.push(v);
        }
    }
    cols
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultivariateConfig {
    pub labels: Vec<String>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub target_corr: CorrelationMatrix,
    pub n: usize,
    pub seed: u64,
    /// Repair a non-positive-definite target instead of failing.
    pub allow_jitter: bool,
}

impl MultivariateConfig {
    pub fn behavior_defaults(n: usize, seed: u64) -> Self {
        let labels = defaults::behavior_labels();
        Self {
            target_corr: CorrelationMatrix::from_upper(
                labels.clone(),
                &defaults::BEHAVIOR_CORRELATION,
            )
            .expect("default correlation is valid"),
            labels,
            means: defaults::BEHAVIOR_MEANS.to_vec(),
            stds: defaults::BEHAVIOR_STDS.to_vec(),
            n,
            seed,
            allow_jitter: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.labels.len();
        if k == 0 {
            return Err(Error::Config(
                "multivariate: at least one column is required".into(),
            ));
        }
        if self.means.len() != k || self.stds.len() != k || self.target_corr.dim() != k {
            return Err(Error::Config(format!(
                "multivariate: {k} labels but {} means, {} stds and a {}x{} correlation",
                self.means.len(),
                self.stds.len(),
                self.target_corr.dim(),
                self.target_corr.dim()
            )));
        }
        if let Some(m) = self.means.iter().find(|m| !m.is_finite()) {
            return Err(Error::Config(format!(
                "multivariate: mean {m} is not finite"
            )));
        }
        if let Some(s) = self.stds.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(Error::Config(format!(
                "multivariate: std {s} must be positive"
            )));
        }
        if self.n == 0 {
            return Err(Error::Config("multivariate: n must be at least 1".into()));
        }
        Ok(())
    }
}

/// Column j of each row is `mean_j + std_j * (L z)_j` with `L L^T` the target
/// correlation and `z` i.i.d. standard normal.
pub fn gen_multivariate(cfg: &MultivariateConfig) -> Result<Dataset> {
    cfg.validate()?;
    let l = factor(&cfg.target_corr, cfg.allow_jitter)?;
    let mut stream = RngStream::substream(cfg.seed, 0);
    let mut cols = correlated_normals(&l, cfg.n, &mut stream);
    for ((col, &mean), &std) in cols.iter_mut().zip(&cfg.means).zip(&cfg.stds) {
        for v in col.iter_mut() {
            *v = mean + std * *v;
        }
    }
    Dataset::from_parts(cfg.labels.clone(), cols)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseScale {
    /// The same sigma for every column.
    Absolute(f64),
    /// sigma_j = fraction * sample std of column j.
    FractionOfStd(f64),
}

impl Default for NoiseScale {
    fn default() -> Self {
        NoiseScale::FractionOfStd(defaults::BOOTSTRAP_NOISE_FRACTION)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResampleMode {
    /// Whole rows are drawn with replacement; cross-column structure survives.
    Joint,
    /// Each column is resampled on its own; cross-column correlation is destroyed.
    #[default]
    Independent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapConfig {
    pub n_out: usize,
    pub noise: NoiseScale,
    pub mode: ResampleMode,
    pub seed: u64,
}

impl BootstrapConfig {
    pub fn new(n_out: usize, seed: u64) -> Self {
        Self {
            n_out,
            noise: NoiseScale::default(),
            mode: ResampleMode::default(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_out == 0 {
            return Err(Error::Config("bootstrap: n_out must be at least 1".into()));
        }
        let s = match self.noise {
            NoiseScale::Absolute(s) | NoiseScale::FractionOfStd(s) => s,
        };
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Config(format!(
                "bootstrap: noise scale must be finite and nonnegative, got {s}"
            )));
        }
        Ok(())
    }
}

/// Resamples `source` with replacement and adds `N(0, sigma_j^2)` noise to every cell.
pub fn gen_bootstrap(source: &Dataset, cfg: &BootstrapConfig) -> Result<Dataset> {
    cfg.validate()?;
    if source.is_empty() || source.n_cols() == 0 {
        return Err(Error::EmptyInput("bootstrap source has no rows".into()));
    }
    let n = source.n_rows() as u64;
    let sigmas: Vec<f64> = match cfg.noise {
        NoiseScale::Absolute(s) => vec![s; source.n_cols()],
        NoiseScale::FractionOfStd(0.0) => vec![0.0; source.n_cols()],
        NoiseScale::FractionOfStd(f) => source
            .names()
            .iter()
            .zip(source.columns())
            .map(|(name, col)| summarize(name, col).map(|s| f * s.std))
            .collect::<Result<_>>()?,
    };

    let mut index_stream = RngStream::substream(cfg.seed, 0);
    let mut noise_stream = RngStream::substream(cfg.seed, 1);
    let mut out: Vec<Vec<f64>> = vec![Vec::with_capacity(cfg.n_out); source.n_cols()];

    match cfg.mode {
        ResampleMode::Joint => {
            for _ in 0..cfg.n_out {
                let idx = index_stream.next_below(n) as usize;
                for (o, col) in out.iter_mut().zip(source.columns()) {
                    o.push(col[idx]);
                }
            }
        }
        ResampleMode::Independent => {
            for (o, col) in out.iter_mut().zip(source.columns()) {
                for _ in 0..cfg.n_out {
                    o.push(col[index_stream.next_below(n) as usize]);
                }
            }
        }
    }

    for r in 0..cfg.n_out {
        for (o, &sigma) in out.iter_mut().zip(&sigmas) {
            if sigma > 0.0 {
                o[r] += sigma * noise_stream.standard_normal();
            }
        }
    }
    Dataset::from_parts(source.names().to_vec(), out)
}

/// Beta(alpha, beta) marginal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaMarginal {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CopulaConfig {
    pub labels: Vec<String>,
    pub latent_corr: CorrelationMatrix,
    pub marginals: Vec<BetaMarginal>,
    pub n: usize,
    pub seed: u64,
    /// Multiplier applied to the [0, 1] output (100 gives the 0-100 scale).
    pub display_scale: f64,
    pub allow_jitter: bool,
}

impl CopulaConfig {
    pub fn behavior_defaults(n: usize, seed: u64) -> Self {
        let labels = defaults::behavior_labels();
        Self {
            latent_corr: CorrelationMatrix::from_upper(
                labels.clone(),
                &defaults::BEHAVIOR_CORRELATION,
            )
            .expect("default correlation is valid"),
            labels,
            marginals: defaults::BEHAVIOR_BETA_MARGINALS
                .iter()
                .map(|&(alpha, beta)| BetaMarginal { alpha, beta })
                .collect(),
            n,
            seed,
            display_scale: 1.0,
            allow_jitter: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.labels.len();
        if k == 0 {
            return Err(Error::Config(
                "copula: at least one column is required".into(),
            ));
        }
        if self.marginals.len() != k || self.latent_corr.dim() != k {
            return Err(Error::Config(format!(
                "copula: {k} labels but {} marginals and a {}x{} latent correlation",
                self.marginals.len(),
                self.latent_corr.dim(),
                self.latent_corr.dim()
            )));
        }
        for m in &self.marginals {
            if !(m.alpha > 0.0 && m.beta > 0.0 && m.alpha.is_finite() && m.beta.is_finite()) {
                return Err(Error::Config(format!(
                    "copula: beta marginal ({}, {}) needs positive finite parameters",
                    m.alpha, m.beta
                )));
            }
        }
        if !(self.display_scale > 0.0 && self.display_scale.is_finite()) {
            return Err(Error::Config(
                "copula: display_scale must be positive".into(),
            ));
        }
        if self.n == 0 {
            return Err(Error::Config("copula: n must be at least 1".into()));
        }
        Ok(())
    }
}

/// Latent correlated normals `X`, uniforms `U = Phi(X)`, then
/// `Y_j = BetaQuantile(U_j; alpha_j, beta_j)`.
pub fn gen_copula(cfg: &CopulaConfig) -> Result<Dataset> {
    cfg.validate()?;
    let l = factor(&cfg.latent_corr, cfg.allow_jitter)?;
    let mut stream = RngStream::substream(cfg.seed, 0);
    let mut cols = correlated_normals(&l, cfg.n, &mut stream);
    for (col, m) in cols.iter_mut().zip(&cfg.marginals) {
        for v in col.iter_mut() {
            let u = normal_cdf(*v);
            *v = beta_quantile(u, m.alpha, m.beta)? * cfg.display_scale;
        }
    }
    Dataset::from_parts(cfg.labels.clone(), cols)
}
