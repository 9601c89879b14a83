//! Default column names and parameters for the employee-behavior scenario.
//! None of the numeric values here are measured; they are plausible choices
//! that reproduce the published correlation figures and are all overridable.

/// The three behavior metrics, in output column order.
pub const BEHAVIOR_METRICS: [&str; 3] = ["TeamEngagement", "Collaboration", "Flexibility"];

pub const PERFORMANCE_COLUMN: &str = "PerformanceScore";

/// Upper triangle (TE-Col, TE-Flex, Col-Flex) of the default target/latent correlation.
pub const BEHAVIOR_CORRELATION: [f64; 3] = [0.8, 0.5, 0.6];

/// Multivariate-normal means and standard deviations on a 0-100 scale.
pub const BEHAVIOR_MEANS: [f64; 3] = [70.0, 65.0, 60.0];
pub const BEHAVIOR_STDS: [f64; 3] = [10.0, 12.0, 15.0];

/// Beta (alpha, beta) marginals for the copula generator.
pub const BEHAVIOR_BETA_MARGINALS: [(f64, f64); 3] = [(5.0, 2.0), (4.0, 2.0), (2.0, 2.0)];

/// Bootstrap noise as a fraction of each column's sample standard deviation.
pub const BOOTSTRAP_NOISE_FRACTION: f64 = 0.05;

/// Agent-based model: spread of the behavior draw around P/100.
pub const ABM_SIGMA: f64 = 0.1;
/// Agent-based model: default performance-score range.
pub const ABM_PERFORMANCE_RANGE: (f64, f64) = (40.0, 95.0);

/// Sample size used when reproducing the correlation figures.
pub const FIGURE_SAMPLE_SIZE: usize = 10_000;

pub fn behavior_labels() -> Vec<String> {
    BEHAVIOR_METRICS.iter().map(|s| s.to_string()).collect()
}
