//! Disturbance distribution families.

use rand::Rng;
use rand_distr::{Distribution, Normal, StudentT};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distribution family of a disturbance term. All families are standardized
/// to mean zero and unit variance before scaling, so `target_variance` in
/// [`DisturbanceSpec`] is exact — except `StudentT2`, whose variance does not
/// exist; it is scaled so its quartiles match a standard normal's, and its
/// target variance is nominal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisturbanceFamily {
    Gaussian,
    /// Standard normal squared, keeping the sign: `sign(z) * z^2`.
    SignedSquareGaussian,
    /// Standard normal raised to the third power.
    CubedGaussian,
    /// Student's t with 2 degrees of freedom.
    StudentT2,
    /// 0.5 N(-2, 1) + 0.5 N(2, 1).
    BimodalMoG,
    /// Exponentiated standard normal, recentered.
    LogNormal,
    Uniform,
}

impl DisturbanceFamily {
    pub const NON_GAUSSIAN: [DisturbanceFamily; 6] = [
        DisturbanceFamily::SignedSquareGaussian,
        DisturbanceFamily::CubedGaussian,
        DisturbanceFamily::StudentT2,
        DisturbanceFamily::BimodalMoG,
        DisturbanceFamily::LogNormal,
        DisturbanceFamily::Uniform,
    ];

    pub fn is_gaussian(self) -> bool {
        self == DisturbanceFamily::Gaussian
    }

    /// One draw with mean 0 and variance 1 (nominal for `StudentT2`).
    pub fn draw_standardized<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        let std_normal = Normal::new(0.0, 1.0).unwrap();
        match self {
            DisturbanceFamily::Gaussian => std_normal.sample(rng),
            DisturbanceFamily::SignedSquareGaussian => {
                // Var(sign(z) z^2) = E z^4 = 3
                let z: f64 = std_normal.sample(rng);
                z.signum() * z * z / 3f64.sqrt()
            }
            DisturbanceFamily::CubedGaussian => {
                // Var(z^3) = E z^6 = 15
                let z: f64 = std_normal.sample(rng);
                z * z * z / 15f64.sqrt()
            }
            DisturbanceFamily::StudentT2 => {
                // infinite variance; match the normal's upper quartile
                // (t2 quantile at 0.75 is sqrt(2/3))
                let t: f64 = StudentT::new(2.0).unwrap().sample(rng);
                t * (0.674_489_750_196_081_7 / (2f64 / 3.0).sqrt())
            }
            DisturbanceFamily::BimodalMoG => {
                // E x = 0, Var x = 1 + 4 = 5
                let center = if rng.gen_bool(0.5) { -2.0 } else { 2.0 };
                (center + std_normal.sample(rng)) / 5f64.sqrt()
            }
            DisturbanceFamily::LogNormal => {
                // E e^z = e^{1/2}, Var e^z = (e - 1) e
                let z: f64 = std_normal.sample(rng);
                (z.exp() - f64::exp(0.5)) / ((std::f64::consts::E - 1.0) * std::f64::consts::E).sqrt()
            }
            DisturbanceFamily::Uniform => {
                // uniform on (-sqrt(3), sqrt(3))
                (rng.gen::<f64>() - 0.5) * 12f64.sqrt()
            }
        }
    }
}

/// A disturbance family together with the variance the draws are scaled to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisturbanceSpec {
    pub family: DisturbanceFamily,
    #[serde(rename = "variance")]
    pub target_variance: f64,
}

impl DisturbanceSpec {
    pub fn new(family: DisturbanceFamily, target_variance: f64) -> Result<Self> {
        if !(target_variance > 0.0) || !target_variance.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "target variance must be a positive real, got {target_variance}"
            )));
        }
        Ok(Self { family, target_variance })
    }

    pub fn gaussian(target_variance: f64) -> Result<Self> {
        Self::new(DisturbanceFamily::Gaussian, target_variance)
    }

    pub fn is_gaussian(&self) -> bool {
        self.family.is_gaussian()
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.family.draw_standardized(rng) * self.target_variance.sqrt()
    }
}
