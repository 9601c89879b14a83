//! Agent-based generator: each agent carries a performance score P in [0, 100]
//! and every behavior metric is `clamp(N(P/100, sigma^2), 0, 1) * 100`.
//!
//! Agents do not interact; all metrics of one agent share its score but use
//! independent draws.

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::defaults;
use crate::error::{Error, Result};
use crate::numerics::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub id: usize,
    pub performance_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerformanceSource {
    /// Scores drawn uniformly from [lo, hi].
    Uniform { lo: f64, hi: f64 },
    /// One agent per row of the named column of a supplied dataset.
    Column(String),
}

impl Default for PerformanceSource {
    fn default() -> Self {
        let (lo, hi) = defaults::ABM_PERFORMANCE_RANGE;
        PerformanceSource::Uniform { lo, hi }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbmConfig {
    /// Ignored for [`PerformanceSource::Column`], which yields one agent per row.
    pub n_agents: usize,
    pub metric_names: Vec<String>,
    pub sigma: f64,
    pub performance_source: PerformanceSource,
    pub seed: u64,
}

impl AbmConfig {
    pub fn new(n_agents: usize, seed: u64) -> Self {
        Self {
            n_agents,
            metric_names: defaults::behavior_labels(),
            sigma: defaults::ABM_SIGMA,
            performance_source: PerformanceSource::default(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::Config(format!(
                "abm: sigma must be positive, got {}",
                self.sigma
            )));
        }
        if self
            .metric_names
            .iter()
            .any(|m| m == defaults::PERFORMANCE_COLUMN)
        {
            return Err(Error::Config(format!(
                "abm: metric name {:?} is reserved",
                defaults::PERFORMANCE_COLUMN
            )));
        }
        if let PerformanceSource::Uniform { lo, hi } = self.performance_source {
            if !(0.0 <= lo && lo <= hi && hi <= 100.0) {
                return Err(Error::Config(format!(
                    "abm: performance range must satisfy 0 <= lo <= hi <= 100, got [{lo}, {hi}]"
                )));
            }
            if self.n_agents == 0 {
                return Err(Error::Config("abm: n_agents must be at least 1".into()));
            }
        }
        Ok(())
    }
}

/// One behavior metric for an agent with score `p`: `clamp(N(p/100, sigma^2), 0, 1) * 100`.
pub fn behavior_metric(p: f64, sigma: f64, stream: &mut RngStream) -> Result<f64> {
    if !(0.0..=100.0).contains(&p) {
        return Err(Error::Domain(format!(
            "performance score {p} outside [0, 100]"
        )));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let g = stream.normal(p / 100.0, sigma);
    Ok(g.clamp(0.0, 1.0) * 100.0)
}

pub fn make_agents(cfg: &AbmConfig, source: Option<&Dataset>) -> Result<Vec<Agent>> {
    let scores: Vec<f64> = match &cfg.performance_source {
        PerformanceSource::Uniform { lo, hi } => {
            let mut stream = RngStream::substream(cfg.seed, 0);
            (0..cfg.n_agents)
                .map(|_| lo + (hi - lo) * stream.next_open01())
                .collect()
        }
        PerformanceSource::Column(name) => {
            let data = source.ok_or_else(|| {
                Error::Config(format!(
                    "abm: performance column {name:?} needs an input dataset"
                ))
            })?;
            let col = data.column(name)?;
            if col.is_empty() {
                return Err(Error::EmptyInput(format!(
                    "performance column {name:?} is empty"
                )));
            }
            col.to_vec()
        }
    };
    scores
        .into_iter()
        .enumerate()
        .map(|(id, p)| {
            if (0.0..=100.0).contains(&p) {
                Ok(Agent {
                    id,
                    performance_score: p,
                })
            } else {
                Err(Error::Domain(format!(
                    "agent {id}: performance score {p} outside [0, 100]"
                )))
            }
        })
        .collect()
}

/// Columns `[PerformanceScore, metric...]`, one row per agent.
pub fn gen_abm(cfg: &AbmConfig, source: Option<&Dataset>) -> Result<Dataset> {
    cfg.validate()?;
    let agents = make_agents(cfg, source)?;
    let mut stream = RngStream::substream(cfg.seed, 1);
    let k = cfg.metric_names.len();
    let mut metrics = vec![Vec::with_capacity(agents.len()); k];
    for agent in &agents {
        for col in metrics.iter_mut() {
            col.push(behavior_metric(
                agent.performance_score,
                cfg.sigma,
                &mut stream,
            )?);
        }
    }
    let mut names = vec![defaults::PERFORMANCE_COLUMN.to_string()];
    names.extend(cfg.metric_names.iter().cloned());
    let mut columns = vec![agents.iter().map(|a| a.performance_score).collect()];
    columns.extend(metrics);
    Dataset::from_parts(names, columns)
}
