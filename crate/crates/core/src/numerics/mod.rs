//! Seedable random streams, special functions and Cholesky factorization.

pub mod linalg;
pub mod rng;
pub mod special;

pub use linalg::{cholesky, cholesky_with_jitter, LowerTriangular, Matrix};
pub use rng::RngStream;
pub use special::{
    beta_quantile, erf, erfc, ln_gamma, normal_cdf, normal_pdf, normal_quantile, reg_inc_beta,
};
