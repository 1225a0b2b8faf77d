//! Statistical primitives: partial correlations, the Fisher-z
//! conditional-independence test, OLS residuals, the ICA non-Gaussianity
//! objective, and the Anderson-Darling normality test.

mod normality;
mod ols;
mod partial;
mod score;

pub use normality::{anderson_darling, NormalityResult, MIN_SAMPLES};
pub use ols::{ols_residuals, solve_least_squares};
pub use partial::{ci_test, partial_correlation, CiTestResult};
pub use score::{nongaussianity_score, Contrast, ScoreConfig, STANDARDIZATION_TOL};
