//! Partial correlations and the Fisher-z conditional-independence test.

use nalgebra::DMatrix;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Outcome of a conditional-independence test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiTestResult {
    /// Fisher-z statistic, standard normal under independence.
    pub statistic: f64,
    pub p_value: f64,
    /// `p_value > alpha`.
    pub independent: bool,
}

fn check_args(data: &Dataset, i: usize, j: usize, cond: &[usize]) -> Result<()> {
    let n = data.n_vars();
    for &v in [i, j].iter().chain(cond) {
        if v >= n {
            return Err(Error::InvalidArgument(format!("variable {v} out of range")));
        }
    }
    if i == j {
        return Err(Error::InvalidArgument("i and j must differ".into()));
    }
    if cond.contains(&i) || cond.contains(&j) {
        return Err(Error::InvalidArgument(
            "conditioning set must not contain i or j".into(),
        ));
    }
    Ok(())
}

/// Sample partial correlation of variables `i` and `j` given `cond`,
/// computed from the inverse of the joint covariance of the involved
/// variables.
pub fn partial_correlation(data: &Dataset, i: usize, j: usize, cond: &[usize]) -> Result<f64> {
    check_args(data, i, j, cond)?;
    let mut vars = vec![i, j];
    vars.extend_from_slice(cond);
    let sub = data.select(&vars)?;
    let cov = sub.covariance();
    let precision = invert_spd(&cov)
        .ok_or_else(|| Error::DegenerateData("singular conditioning covariance".into()))?;
    let denom = precision[(0, 0)] * precision[(1, 1)];
    if !(denom > 0.0) {
        return Err(Error::DegenerateData("singular conditioning covariance".into()));
    }
    let r = -precision[(0, 1)] / denom.sqrt();
    if !r.is_finite() {
        return Err(Error::DegenerateData("partial correlation is not finite".into()));
    }
    Ok(r.clamp(-1.0, 1.0))
}

fn invert_spd(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let inv = m.clone().lu().try_inverse()?;
    inv.iter().all(|v| v.is_finite()).then_some(inv)
}

/// Fisher-z test of zero partial correlation:
/// `z = sqrt(N - |cond| - 3) * atanh(r)` with a two-sided Gaussian p-value.
pub fn ci_test(
    data: &Dataset,
    i: usize,
    j: usize,
    cond: &[usize],
    alpha: f64,
) -> Result<CiTestResult> {
    if !(0.0..1.0).contains(&alpha) || alpha == 0.0 {
        return Err(Error::InvalidArgument(format!("alpha {alpha} outside (0, 1)")));
    }
    let n = data.n_samples();
    let needed = cond.len() + 4;
    if n < needed {
        return Err(Error::InsufficientData { needed, got: n });
    }
    let r = partial_correlation(data, i, j, cond)?;
    // atanh diverges at +-1; cap so the statistic stays finite
    let r_safe = r.clamp(-1.0 + 1e-15, 1.0 - 1e-15);
    let statistic = ((n - cond.len() - 3) as f64).sqrt() * r_safe.atanh();
    let normal = Normal::new(0.0, 1.0).unwrap();
    let p_value = (2.0 * normal.cdf(-statistic.abs())).clamp(0.0, 1.0);
    Ok(CiTestResult { statistic, p_value, independent: p_value > alpha })
}
