//! The ICA non-Gaussianity objective over standardized residuals.

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Contrast function applied to each residual before comparing with its
/// Gaussian expectation. Only the absolute value ships; the config hook keeps
/// the objective extensible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contrast {
    AbsValue,
}

impl Contrast {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Contrast::AbsValue => x.abs(),
        }
    }

    /// `E f(g)` for a standard normal `g`.
    pub fn gaussian_reference(self) -> f64 {
        match self {
            Contrast::AbsValue => (2.0 / std::f64::consts::PI).sqrt(),
        }
    }
}

/// Configuration of the non-Gaussianity objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreConfig {
    pub contrast: Contrast,
    /// `E f(g)`, `g ~ N(0, 1)`; fixed analytically by the contrast.
    pub gaussian_reference: f64,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        let contrast = Contrast::AbsValue;
        Self { contrast, gaussian_reference: contrast.gaussian_reference() }
    }
}

impl ScoreConfig {
    pub fn new(contrast: Contrast) -> Self {
        Self { contrast, gaussian_reference: contrast.gaussian_reference() }
    }
}

/// Tolerance of the standardization guard on the input residuals.
pub const STANDARDIZATION_TOL: f64 = 0.01;

/// The objective `U = sum_i (mean f(e_i) - k)^2` over the rows of
/// `residuals`, which must be standardized (mean 0, variance 1, within
/// [`STANDARDIZATION_TOL`]). Zero for an empty variable set; higher means
/// residuals look less Gaussian.
pub fn nongaussianity_score(residuals: &Dataset, config: &ScoreConfig) -> Result<f64> {
    if (config.gaussian_reference - config.contrast.gaussian_reference()).abs() > 1e-12 {
        return Err(Error::ContractViolation(
            "gaussian_reference does not match the contrast".into(),
        ));
    }
    let mut total = 0.0;
    for i in 0..residuals.n_vars() {
        let mean = residuals.mean(i);
        let var = residuals.variance(i);
        if mean.abs() > STANDARDIZATION_TOL || (var - 1.0).abs() > STANDARDIZATION_TOL {
            return Err(Error::ContractViolation(format!(
                "residual {i} is not standardized (mean {mean:.4}, variance {var:.4})"
            )));
        }
        let row = residuals.values().row(i);
        let mean_f =
            row.iter().map(|&x| config.contrast.apply(x)).sum::<f64>() / row.len() as f64;
        let dev = mean_f - config.gaussian_reference;
        total += dev * dev;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::SeedableRng;
    use rand_distr::{Distribution, Normal};

    fn standardized(mut raw: Vec<f64>) -> Dataset {
        let n = raw.len() as f64;
        let mean = raw.iter().sum::<f64>() / n;
        for v in raw.iter_mut() {
            *v -= mean;
        }
        let var = raw.iter().map(|v| v * v).sum::<f64>() / n;
        for v in raw.iter_mut() {
            *v /= var.sqrt();
        }
        Dataset::with_default_names(DMatrix::from_vec(1, raw.len(), raw)).unwrap()
    }

    #[test]
    fn empty_variable_set_scores_zero() {
        let data =
            Dataset::new(vec![], DMatrix::<f64>::zeros(0, 5)).unwrap();
        assert_eq!(nongaussianity_score(&data, &ScoreConfig::default()).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_term_matches_sampling_theory() {
        // For raw N(0,1) input the per-node term has expectation
        // Var(|g|)/N = (1 - 2/pi)/N. Empirical standardization shrinks it
        // roughly eightfold: mean |e| and the sample sd fluctuate together,
        // and the delta method gives Var(mean|e|/sd) ~ 0.045/N.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let n = 10_000usize;
        let trials = 200;
        let mut sum = 0.0;
        for _ in 0..trials {
            let data = standardized((0..n).map(|_| normal.sample(&mut rng)).collect());
            sum += nongaussianity_score(&data, &ScoreConfig::default()).unwrap();
        }
        let mean_term = sum / trials as f64;
        let expected = 0.0451 / n as f64;
        assert!(
            mean_term > expected / 2.0 && mean_term < expected * 2.0,
            "mean term {mean_term:e}, expected about {expected:e}"
        );
    }

    #[test]
    fn uniform_term_matches_population_value() {
        // E|e| = sqrt(3)/2 for uniform with unit variance
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        let n = 200_000usize;
        let data = standardized(
            (0..n).map(|_| (rand::Rng::gen::<f64>(&mut rng) - 0.5) * 12f64.sqrt()).collect(),
        );
        let u = nongaussianity_score(&data, &ScoreConfig::default()).unwrap();
        let expected = (3f64.sqrt() / 2.0 - (2.0 / std::f64::consts::PI).sqrt()).powi(2);
        assert!((u - expected).abs() < 0.2 * expected, "U = {u:e}, expected {expected:e}");
        assert!((expected - 4.64e-3).abs() < 1e-4);
    }

    #[test]
    fn rejects_non_standardized_input() {
        let data =
            Dataset::with_default_names(DMatrix::from_vec(1, 4, vec![10.0, 12.0, 9.0, 11.0]))
                .unwrap();
        assert!(matches!(
            nongaussianity_score(&data, &ScoreConfig::default()),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn sign_flip_invariance() {
        let data = standardized(vec![0.3, -1.2, 2.0, -0.7, 0.9, -1.3]);
        let flipped = {
            let values = data.values().map(|v| -v);
            Dataset::with_default_names(values).unwrap()
        };
        let cfg = ScoreConfig::default();
        assert_eq!(
            nongaussianity_score(&data, &cfg).unwrap(),
            nongaussianity_score(&flipped, &cfg).unwrap()
        );
    }
}
