//! Class-based Lorenz curve of the limiting degree fractions and its Gini
//! index.
//!
//! The unit interval is split into `n + 1` equal segments. Walking the
//! admissible degree classes `j = k .. k+n` from the rarest (largest `j`,
//! the fractions are strictly decreasing) to the most common, segment `i`
//! carries the cumulative fraction `S_i = sum_{j=k+n-i+1}^{k+n} b(j, k)`.
//! The curve therefore has `n + 2` points, ending at the closed-form
//! partial sum, which is slightly below 1 at finite `n`.
//!
//! Integrating that polyline with the trapezoid rule gives
//! `2(n+1) Area = 2 sum_{i<=n} S_i + S_{n+1}`, which telescopes to the
//! closed form used by [`theoretical_gini`]:
//!
//! ```text
//! Gini = 1 - 1/(n+1) [ (3k-2)/(k-2)
//!        - Gamma(2k-1) Gamma(k+n+1) (2(k-1)n + 5k - 4)
//!          / (Gamma(k) Gamma(2k+n) (k-2)) ]
//! ```
//!
//! This is an exact identity (the unit tests verify it in rationals). The
//! coefficient `2(k-1)n + 5k - 4` is sometimes quoted as `2((k-1)n + 2)`,
//! which only agrees to leading order; [`theoretical_gini_asymptotic`]
//! keeps that weaker form for comparison output.

use num::bigint::BigInt;
use num::Zero;

use super::fractions::{limit_fraction, rational_to_f64, BigRational};

/// Lorenz points of the limiting degree-class distribution, exact.
/// Returns `n + 2` pairs (position, cumulative fraction).
pub fn theoretical_lorenz_exact(n: u64, k: u32) -> Vec<(BigRational, BigRational)> {
    let denom = BigInt::from(n + 1);
    let mut points = Vec::with_capacity(n as usize + 2);
    points.push((BigRational::zero(), BigRational::zero()));
    let mut acc = BigRational::zero();
    // walk j downward from k+n, advancing b by its one-step ratio
    let mut b = limit_fraction(k as u64 + n, k).expect("j >= k");
    let ku = k as u64;
    for i in 0..=n {
        let j = ku + n - i;
        acc += &b;
        if j > ku {
            // b(j-1) = b(j) * (j + k - 1) / (j - 1)
            b *= BigRational::new(BigInt::from(j + ku - 1), BigInt::from(j - 1));
        }
        let pos = BigRational::new(BigInt::from(i + 1), denom.clone());
        points.push((pos, acc.clone()));
    }
    points
}

/// Float twin of [`theoretical_lorenz_exact`]. Terms are accumulated from
/// the smallest fraction upward, so the float error stays near machine
/// epsilon even for large n (exact rationals would drag thousands of
/// digits through the cumulative sums there).
pub fn theoretical_lorenz(n: u64, k: u32) -> Vec<(f64, f64)> {
    let mut points = Vec::with_capacity(n as usize + 2);
    points.push((0.0, 0.0));
    let mut b = rational_to_f64(&limit_fraction(k as u64 + n, k).expect("j >= k"));
    let ku = k as u64;
    let mut acc = 0.0f64;
    for i in 0..=n {
        let j = ku + n - i;
        acc += b;
        if j > ku {
            b *= (j + ku - 1) as f64 / (j - 1) as f64;
        }
        points.push(((i + 1) as f64 / (n + 1) as f64, acc));
    }
    points
}

fn gamma_ratio_term(n: u64, k: u32) -> f64 {
    // Gamma(2k-1)/Gamma(k) * Gamma(k+n+1)/Gamma(2k+n)
    // = prod_{i=k}^{2k-2} i / prod_{i=k+n+1}^{2k+n-1} i   (k-1 factors each)
    let ku = k as u64;
    let mut r = 1.0f64;
    for i in ku..(2 * ku - 1) {
        r *= i as f64;
    }
    for i in (ku + n + 1)..(2 * ku + n) {
        r /= i as f64;
    }
    r
}

/// Gini index of the class-based Lorenz curve, exact trapezoid closed form.
pub fn theoretical_gini(n: u64, k: u32) -> f64 {
    let kf = k as f64;
    let nf = n as f64;
    let coeff = 2.0 * (kf - 1.0) * nf + 5.0 * kf - 4.0;
    let bracket = (3.0 * kf - 2.0) / (kf - 2.0) - gamma_ratio_term(n, k) * coeff / (kf - 2.0);
    1.0 - bracket / (nf + 1.0)
}

/// Same quantity with the leading-order coefficient `2((k-1)n + 2)`. Only
/// asymptotically equal to [`theoretical_gini`]; reported side by side so
/// the finite-n difference stays visible.
pub fn theoretical_gini_asymptotic(n: u64, k: u32) -> f64 {
    let kf = k as f64;
    let nf = n as f64;
    let coeff = 2.0 * ((kf - 1.0) * nf + 2.0);
    let bracket = (3.0 * kf - 2.0) / (kf - 2.0) - gamma_ratio_term(n, k) * coeff / (kf - 2.0);
    1.0 - bracket / (nf + 1.0)
}

/// Trapezoid integral of a polyline whose first point sits at x = 0.
pub fn trapezoid_area(points: &[(f64, f64)]) -> f64 {
    let mut area = 0.0;
    for w in points.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        area += (x1 - x0) * (y0 + y1) / 2.0;
    }
    area
}
