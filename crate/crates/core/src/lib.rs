//! Synthetic tabular data generation.
//!
//! Five generators produce [`Dataset`]s of named numeric columns:
//!
//! * [`gen_multivariate`]: correlated normals through a Cholesky factor,
//! * [`gen_bootstrap`]: resampling with replacement plus Gaussian noise,
//! * [`gen_copula`]: Gaussian copula with beta marginals,
//! * [`gen_abm`]: agent-based clipped-normal behavior metrics,
//! * [`train_gan`] / [`gan_sample`]: a small MLP generative adversarial network.
//!
//! [`fidelity_report`] compares a synthetic dataset against a reference and the
//! `render_*` functions draw correlation heatmaps and pair plots as SVG.
//!
//! All randomness flows through [`RngStream`], so every output is a pure
//! function of its configuration and seed.

pub mod abm;
pub mod data;
pub mod defaults;
pub mod error;
pub mod evaluation;
pub mod gan;
pub mod numerics;
pub mod statistical;

pub use abm::{behavior_metric, gen_abm, AbmConfig, Agent, PerformanceSource};
pub use data::{
    column_stats, correlation_matrix, covariance_matrix, load_csv, spearman_matrix, write_csv,
    CorrelationMatrix, Dataset, SummaryStats,
};
pub use error::{Error, Result};
pub use evaluation::{
    fidelity_report, ks_statistic, render_heatmap, render_pairplot, FidelityReport,
};
pub use gan::{gan_sample, train_gan, GanConfig, GanModel, MinMaxScaling, MlpParams, TrainLog};
pub use numerics::{LowerTriangular, Matrix, RngStream};
pub use statistical::{
    gen_bootstrap, gen_copula, gen_multivariate, BetaMarginal, BootstrapConfig, CopulaConfig,
    MultivariateConfig, NoiseScale, ResampleMode,
};
