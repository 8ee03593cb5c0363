//! Asymptotic network clustering coefficient.

use num::rational::Ratio;

use super::special::{hyp3f2_unit, SpecialError};

/// Local clustering coefficient of a recruited vertex of degree `j`:
/// `(k-1)(2j-k) / (j(j-1))`. Equals 1 at birth (`j = k`).
pub fn local_coefficient(j: u64, k: u32) -> f64 {
    let j = j as f64;
    let k = k as f64;
    (k - 1.0) * (2.0 * j - k) / (j * (j - 1.0))
}

/// Limit of the average local clustering coefficient as the network grows:
///
/// ```text
/// C(inf) = (k-1)/(2k-1) * ( 2(2k-1)/k - 3F2(1, k-1, k; 2k, k+1; 1) )
/// ```
pub fn clustering_limit(k: u32) -> Result<f64, SpecialError> {
    let ki = k as i64;
    let r = Ratio::from_integer;
    let f = hyp3f2_unit([r(1), r(ki - 1), r(ki)], [r(2 * ki), r(ki + 1)])?;
    let kf = k as f64;
    Ok((kf - 1.0) / (2.0 * kf - 1.0) * (2.0 * (2.0 * kf - 1.0) / kf - f))
}
