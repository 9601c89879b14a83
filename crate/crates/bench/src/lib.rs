//! Shared fixtures for the criterion benchmarks.

use synthdata::{gen_multivariate, Dataset, MultivariateConfig};

/// Three behavior columns with the default correlation structure.
pub fn behavior_sample(n: usize, seed: u64) -> Dataset {
    gen_multivariate(&MultivariateConfig::behavior_defaults(n, seed)).expect("defaults are valid")
}
