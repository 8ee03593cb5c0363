//! Limiting degree fractions and expected degree counts.
//!
//! `b(j, k)` is the limit of (number of newcomers with degree j) / n. It is
//! computed exactly in rationals from the product form
//!
//! ```text
//! b(k, k) = (k - 1) / (2k - 1),    b(j, k) = b(j - 1, k) * (j - 1) / (j + k - 1)
//! ```
//!
//! which telescopes to the gamma-ratio closed form
//! `Gamma(j) Gamma(2k-1) / (Gamma(j+k) Gamma(k-1))`. Huge-argument gamma
//! ratios are never formed directly.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{BigUint, One, ToPrimitive, Zero};
use thiserror::Error;

pub type BigRational = Ratio<BigInt>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FractionError {
    #[error("degree j={j} is below the minimum degree k={k}")]
    DegreeBelowIndex { j: u64, k: u32 },
    #[error("degree j={j} is out of range for n={n}, k={k} (max k+n-1)")]
    DegreeOutOfRange { j: u64, k: u32, n: u64 },
    #[error("recurrence needs n >= 1, got {0}")]
    TimeTooSmall(u64),
}

fn big(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact limiting fraction `b(j, k)` of degree-`j` vertices, for `j >= k`.
pub fn limit_fraction(j: u64, k: u32) -> Result<BigRational, FractionError> {
    if j < k as u64 {
        return Err(FractionError::DegreeBelowIndex { j, k });
    }
    let ku = k as u64;
    let mut b = BigRational::new(BigInt::from(ku - 1), BigInt::from(2 * ku - 1));
    for jj in (ku + 1)..=j {
        b *= BigRational::new(BigInt::from(jj - 1), BigInt::from(jj + ku - 1));
    }
    Ok(b)
}

/// Exact partial sum `sum_{j=k}^{k+n} b(j, k)` in closed form:
/// `1 - prod_{i=k}^{2k-2} i / prod_{i=k+n+1}^{2k+n-1} i`.
pub fn partial_sum_fractions(n: u64, k: u32) -> BigRational {
    let ku = k as u64;
    let mut num = BigInt::one();
    for i in ku..=(2 * ku - 2) {
        num *= BigInt::from(i);
    }
    let mut den = BigInt::one();
    for i in (ku + n + 1)..(2 * ku + n) {
        den *= BigInt::from(i);
    }
    BigRational::one() - BigRational::new(num, den)
}

/// Expected count of newcomers with degree `j` at time `n`, by iterating the
/// mean-count recurrences seeded with a single degree-`k` vertex at `n = 1`:
///
/// ```text
/// E[X(n+1, k)] = E[X(n, k)] (1 - k / ((k-1)n + 1)) + 1
/// E[X(n+1, j)] = E[X(n, j)] (1 - j / ((k-1)n + 1))
///                + E[X(n, j-1)] (j-1) / ((k-1)n + 1),   j > k
/// ```
///
/// The recruitment weight `j` equals the number of active cliques incident
/// with a degree-`j` newcomer only for `k = 3` (in general that number is
/// `k + (k-2)(j-k)`), so for `k > 3` these means drift from the exact
/// process means once `j > k`. They are kept in this printed form because
/// the limit fractions `b(j, k)` are defined by them.
pub fn expected_degree_count(n: u64, j: u64, k: u32) -> Result<f64, FractionError> {
    if n < 1 {
        return Err(FractionError::TimeTooSmall(n));
    }
    check_degree_range(n, j, k)?;
    let ku = k as u64;
    let width = (j - ku + 1) as usize;
    // row[d] = E[X(m, k + d)]
    let mut row = vec![0.0f64; width];
    row[0] = 1.0;
    for m in 1..n {
        let t = ((ku - 1) * m + 1) as f64;
        let mut next = vec![0.0f64; width];
        next[0] = row[0] * (1.0 - ku as f64 / t) + 1.0;
        for d in 1..width {
            let jj = (ku + d as u64) as f64;
            next[d] = row[d] * (1.0 - jj / t) + row[d - 1] * (jj - 1.0) / t;
        }
        row = next;
    }
    Ok(row[width - 1])
}

/// Exact-rational twin of [`expected_degree_count`], for small-instance
/// cross-checks.
pub fn expected_degree_count_exact(n: u64, j: u64, k: u32) -> Result<BigRational, FractionError> {
    if n < 1 {
        return Err(FractionError::TimeTooSmall(n));
    }
    check_degree_range(n, j, k)?;
    let ku = k as u64;
    let width = (j - ku + 1) as usize;
    let mut row = vec![BigRational::zero(); width];
    row[0] = BigRational::one();
    for m in 1..n {
        let t = big((ku - 1) * m + 1);
        let mut next = vec![BigRational::zero(); width];
        next[0] = &row[0] * (BigRational::one() - big(ku) / &t) + BigRational::one();
        for d in 1..width {
            let jj = ku + d as u64;
            next[d] = &row[d] * (BigRational::one() - big(jj) / &t)
                + &row[d - 1] * (big(jj - 1) / &t);
        }
        row = next;
    }
    Ok(row.pop().expect("width >= 1"))
}

fn check_degree_range(n: u64, j: u64, k: u32) -> Result<(), FractionError> {
    if j < k as u64 {
        return Err(FractionError::DegreeBelowIndex { j, k });
    }
    if j > k as u64 + n - 1 {
        return Err(FractionError::DegreeOutOfRange { j, k, n });
    }
    Ok(())
}

/// Stirling number of the second kind S(r, i) by the triangle recurrence
/// `S(r, i) = i S(r-1, i) + S(r-1, i-1)`. Returns 0 for `i > r`.
pub fn stirling2(r: u32, i: u32) -> BigUint {
    if i > r {
        return BigUint::zero();
    }
    if r == 0 {
        return BigUint::one(); // S(0, 0)
    }
    if i == 0 {
        return BigUint::zero();
    }
    // row-by-row; rows are short for the moment orders used here
    let mut row = vec![BigUint::one()]; // S(0, 0)
    for rr in 1..=r {
        let mut next = vec![BigUint::zero(); (rr + 1) as usize];
        for ii in 1..=rr.min(r) {
            let prev_same = row.get(ii as usize).cloned().unwrap_or_else(BigUint::zero);
            let prev_left = row[(ii - 1) as usize].clone();
            next[ii as usize] = BigUint::from(ii) * prev_same + prev_left;
        }
        row = next;
    }
    row[i as usize].clone()
}

/// f64 view of a big rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
