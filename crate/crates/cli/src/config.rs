//! Run configuration documents and the manifests written beside outputs.
//!
//! A config is a JSON object naming one `method`, a mandatory `seed`, optional
//! `input`, the `output` paths, and exactly one method block keyed by the
//! method name. Every block field has a default, so `"copula": {}` is a
//! complete block. Relative paths resolve against the working directory.

use std::path::Path;

use serde::{Deserialize, Serialize};
use synthdata::defaults;
use synthdata::{
    AbmConfig, BetaMarginal, BootstrapConfig, CopulaConfig, CorrelationMatrix, GanConfig, Matrix,
    MultivariateConfig, NoiseScale, PerformanceSource, ResampleMode,
};

use crate::CliError;

/// Rows generated when a block does not say otherwise.
pub const DEFAULT_ROWS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Multivariate,
    Bootstrap,
    Copula,
    Abm,
    Gan,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Multivariate => "multivariate",
            Method::Bootstrap => "bootstrap",
            Method::Copula => "copula",
            Method::Abm => "abm",
            Method::Gan => "gan",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_dir: Option<String>,
}

fn behavior_correlation() -> Vec<Vec<f64>> {
    let [a, b, c] = defaults::BEHAVIOR_CORRELATION;
    vec![vec![1.0, a, b], vec![a, 1.0, c], vec![b, c, 1.0]]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MultivariateBlock {
    pub n: usize,
    pub columns: Vec<String>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub correlation: Vec<Vec<f64>>,
    pub allow_jitter: bool,
}

impl Default for MultivariateBlock {
    fn default() -> Self {
        Self {
            n: DEFAULT_ROWS,
            columns: defaults::behavior_labels(),
            means: defaults::BEHAVIOR_MEANS.to_vec(),
            stds: defaults::BEHAVIOR_STDS.to_vec(),
            correlation: behavior_correlation(),
            allow_jitter: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BootstrapBlock {
    pub n: usize,
    pub noise: NoiseScale,
    pub mode: ResampleMode,
}

impl Default for BootstrapBlock {
    fn default() -> Self {
        Self {
            n: DEFAULT_ROWS,
            noise: NoiseScale::default(),
            mode: ResampleMode::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CopulaBlock {
    pub n: usize,
    pub columns: Vec<String>,
    pub latent_correlation: Vec<Vec<f64>>,
    pub marginals: Vec<BetaMarginal>,
    pub display_scale: f64,
    pub allow_jitter: bool,
}

impl Default for CopulaBlock {
    fn default() -> Self {
        Self {
            n: DEFAULT_ROWS,
            columns: defaults::behavior_labels(),
            latent_correlation: behavior_correlation(),
            marginals: defaults::BEHAVIOR_BETA_MARGINALS
                .iter()
                .map(|&(alpha, beta)| BetaMarginal { alpha, beta })
                .collect(),
            display_scale: 1.0,
            allow_jitter: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AbmBlock {
    /// Ignored when `performance` names a column of the input dataset.
    pub n_agents: usize,
    pub metrics: Vec<String>,
    pub sigma: f64,
    pub performance: PerformanceSource,
}

impl Default for AbmBlock {
    fn default() -> Self {
        Self {
            n_agents: DEFAULT_ROWS,
            metrics: defaults::behavior_labels(),
            sigma: defaults::ABM_SIGMA,
            performance: PerformanceSource::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GanBlock {
    pub noise_dim: usize,
    pub hidden: [usize; 2],
    pub learning_rate: f64,
    pub batch_size: usize,
    #[serde(alias = "epochs")]
    pub steps: usize,
    /// Rows sampled by `generate`.
    pub n: usize,
    /// A previously trained model; `generate` samples from it instead of training.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
}

impl Default for GanBlock {
    fn default() -> Self {
        let g = GanConfig::default();
        Self {
            noise_dim: g.noise_dim,
            hidden: g.hidden,
            learning_rate: g.learning_rate,
            batch_size: g.batch_size,
            steps: g.steps,
            n: DEFAULT_ROWS,
            model: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub method: Method,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default)]
    pub output: Outputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multivariate: Option<MultivariateBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bootstrap: Option<BootstrapBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copula: Option<CopulaBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abm: Option<AbmBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gan: Option<GanBlock>,
}

/// The document written next to a generated dataset. Its `config` is the fully
/// resolved run configuration, and the manifest itself is accepted by
/// `generate --config` to repeat the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub rows: usize,
    pub columns: Vec<String>,
    pub config: RunConfig,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

fn nonempty(field: &str, value: &Option<String>) -> Result<(), CliError> {
    match value {
        Some(p) if p.trim().is_empty() => Err(config_err(format!("{field}: path is empty"))),
        _ => Ok(()),
    }
}

fn correlation(
    labels: &[String],
    rows: &[Vec<f64>],
    field: &str,
) -> Result<CorrelationMatrix, CliError> {
    let m = Matrix::from_rows(rows).map_err(|e| config_err(format!("{field}: {e}")))?;
    CorrelationMatrix::new(labels.to_vec(), m).map_err(|e| config_err(format!("{field}: {e}")))
}

impl RunConfig {
    /// Parses a config document, or a manifest written by an earlier run.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match serde_json::from_str::<RunConfig>(text) {
            Ok(cfg) => cfg.validated(),
            Err(first) => match serde_json::from_str::<Manifest>(text) {
                Ok(manifest) => manifest.config.validated(),
                Err(_) => Err(config_err(first.to_string())),
            },
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => config_err(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn validated(self) -> Result<Self, CliError> {
        let present: Vec<&str> = [
            ("multivariate", self.multivariate.is_some()),
            ("bootstrap", self.bootstrap.is_some()),
            ("copula", self.copula.is_some()),
            ("abm", self.abm.is_some()),
            ("gan", self.gan.is_some()),
        ]
        .iter()
        .filter(|(_, p)| *p)
        .map(|(n, _)| *n)
        .collect();
        let method = self.method.name();
        if present != [method] {
            return Err(config_err(format!(
                "method is \"{method}\" so exactly one \"{method}\" block is required, found [{}]",
                present.join(", ")
            )));
        }
        nonempty("input", &self.input)?;
        nonempty("output.dataset", &self.output.dataset)?;
        nonempty("output.model", &self.output.model)?;
        nonempty("output.log", &self.output.log)?;
        nonempty("output.report_dir", &self.output.report_dir)?;
        if let Some(g) = &self.gan {
            nonempty("gan.model", &g.model)?;
        }
        Ok(self)
    }

    /// The input path, or a config error naming the missing field.
    pub fn require_input(&self) -> Result<&str, CliError> {
        self.input.as_deref().ok_or_else(|| {
            config_err(format!(
                "missing field `input`: method {} needs an input dataset",
                self.method.name()
            ))
        })
    }

    pub fn require_output(&self, field: &str, value: &Option<String>) -> Result<String, CliError> {
        value
            .clone()
            .ok_or_else(|| config_err(format!("missing field `output.{field}`")))
    }

    pub fn multivariate_config(
        &self,
        b: &MultivariateBlock,
    ) -> Result<MultivariateConfig, CliError> {
        let cfg = MultivariateConfig {
            labels: b.columns.clone(),
            means: b.means.clone(),
            stds: b.stds.clone(),
            target_corr: correlation(&b.columns, &b.correlation, "multivariate.correlation")?,
            n: b.n,
            seed: self.seed,
            allow_jitter: b.allow_jitter,
        };
        cfg.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(cfg)
    }

    pub fn bootstrap_config(&self, b: &BootstrapBlock) -> Result<BootstrapConfig, CliError> {
        let cfg = BootstrapConfig {
            n_out: b.n,
            noise: b.noise,
            mode: b.mode,
            seed: self.seed,
        };
        cfg.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(cfg)
    }

    pub fn copula_config(&self, b: &CopulaBlock) -> Result<CopulaConfig, CliError> {
        let cfg = CopulaConfig {
            labels: b.columns.clone(),
            latent_corr: correlation(
                &b.columns,
                &b.latent_correlation,
                "copula.latent_correlation",
            )?,
            marginals: b.marginals.clone(),
            n: b.n,
            seed: self.seed,
            display_scale: b.display_scale,
            allow_jitter: b.allow_jitter,
        };
        cfg.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(cfg)
    }

    pub fn abm_config(&self, b: &AbmBlock) -> Result<AbmConfig, CliError> {
        let cfg = AbmConfig {
            n_agents: b.n_agents,
            metric_names: b.metrics.clone(),
            sigma: b.sigma,
            performance_source: b.performance.clone(),
            seed: self.seed,
        };
        cfg.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(cfg)
    }

    pub fn gan_config(&self, b: &GanBlock) -> Result<GanConfig, CliError> {
        let cfg = GanConfig {
            noise_dim: b.noise_dim,
            hidden: b.hidden,
            learning_rate: b.learning_rate,
            batch_size: b.batch_size,
            steps: b.steps,
            seed: self.seed,
        };
        cfg.validate().map_err(|e| config_err(e.to_string()))?;
        Ok(cfg)
    }
}
