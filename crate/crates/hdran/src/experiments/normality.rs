//! Skewness-kurtosis omnibus normality test.
//!
//! D'Agostino's K-squared: the sample skewness and kurtosis are each
//! transformed to approximately standard normal Z scores (D'Agostino 1970
//! for skewness, Anscombe and Glynn 1983 for kurtosis); the omnibus
//! statistic `K2 = Z1^2 + Z2^2` is chi-square with 2 degrees of freedom
//! under normality, so the p-value is simply `exp(-K2 / 2)`.

use serde::{Deserialize, Serialize};

use super::ExperimentError;

pub const MIN_SAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalityResult {
    /// The omnibus statistic K2.
    pub statistic: f64,
    /// Asymptotic chi-square(2) p-value.
    pub p_value: f64,
    /// Sample skewness g1 (biased moment estimator).
    pub skewness: f64,
}

fn central_moments(samples: &[f64]) -> (f64, f64, f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in samples {
        let d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    (mean, m2 / n, m3 / n, m4 / n)
}

/// Sample skewness `g1 = m3 / m2^(3/2)`.
pub fn sample_skewness(samples: &[f64]) -> Result<f64, ExperimentError> {
    let (_, m2, m3, _) = central_moments(samples);
    if m2 <= 0.0 {
        return Err(ExperimentError::ZeroVariance);
    }
    Ok(m3 / m2.powf(1.5))
}

fn skewness_z(g1: f64, n: f64) -> f64 {
    let y = g1 * ((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0))).sqrt();
    let beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0)
        / ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    let w2 = -1.0 + (2.0 * (beta2 - 1.0)).sqrt();
    let delta = 1.0 / (0.5 * w2.ln()).sqrt();
    let alpha = (2.0 / (w2 - 1.0)).sqrt();
    let t = y / alpha;
    delta * (t + (t * t + 1.0).sqrt()).ln()
}

fn kurtosis_z(b2: f64, n: f64) -> f64 {
    let eb2 = 3.0 * (n - 1.0) / (n + 1.0);
    let var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0).powi(2) * (n + 3.0) * (n + 5.0));
    let x = (b2 - eb2) / var_b2.sqrt();
    let sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0))
        * (6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0))).sqrt();
    let a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + (1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)).sqrt());
    let inner: f64 = (1.0 - 2.0 / a) / (1.0 + x * (2.0 / (a - 4.0)).sqrt());
    let term = inner.signum() * inner.abs().cbrt();
    ((1.0 - 2.0 / (9.0 * a)) - term) / (2.0 / (9.0 * a)).sqrt()
}

/// Omnibus normality test. Needs at least [`MIN_SAMPLES`] observations
/// and positive sample variance.
pub fn normality_test(samples: &[f64]) -> Result<NormalityResult, ExperimentError> {
    if samples.len() < MIN_SAMPLES {
        return Err(ExperimentError::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples.len(),
        });
    }
    let n = samples.len() as f64;
    let (_, m2, m3, m4) = central_moments(samples);
    if m2 <= 0.0 {
        return Err(ExperimentError::ZeroVariance);
    }
    let g1 = m3 / m2.powf(1.5);
    let b2 = m4 / (m2 * m2);
    let z1 = skewness_z(g1, n);
    let z2 = kurtosis_z(b2, n);
    let k2 = z1 * z1 + z2 * z2;
    Ok(NormalityResult {
        statistic: k2,
        p_value: (-k2 / 2.0).exp(),
        skewness: g1,
    })
}
