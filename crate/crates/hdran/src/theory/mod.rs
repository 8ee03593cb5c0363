//! Closed forms, recurrences and special-function plumbing for every
//! analytic quantity the simulator is validated against.
//!
//! Everything here is a pure function of its arguments; the modules share
//! no mutable state.

pub mod clustering;
pub mod depth;
pub mod diameter;
pub mod fractions;
pub mod label_degree;
pub mod lorenz;
pub mod special;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use self::diameter::RootError;
use self::fractions::{rational_to_f64, BigRational};
use self::special::SpecialError;

/// A degree fraction in both exact and float form. The exact value is
/// serialized as a `numerator/denominator` string.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FractionValue {
    pub exact: String,
    pub value: f64,
}

impl FractionValue {
    fn from_rational(r: &BigRational) -> Self {
        Self {
            exact: format!("{}/{}", r.numer(), r.denom()),
            value: rational_to_f64(r),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct DiameterReport {
    pub eta_star: f64,
    pub a: f64,
    pub c: f64,
}

/// Every closed form evaluated at one `(k, n)` pair.
///
/// `depth_second_moment` comes from the exact recurrence;
/// `depth_second_moment_closed_form` is the published asymptotic-kernel
/// form, retained so its gap stays visible (it is not used as a reference
/// anywhere). Same pattern for the two Gini fields.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TheoryReport {
    pub k: u32,
    pub n: u64,
    /// `j -> b(j, k)` for `j` up to the report cap.
    pub b_fractions: BTreeMap<u64, FractionValue>,
    /// `j -> E[X(n, j)]` (newcomer view, printed recurrence).
    pub expected_counts: BTreeMap<u64, f64>,
    pub clustering_limit: f64,
    pub gini_closed_form: f64,
    pub gini_asymptotic_form: f64,
    pub lorenz_points: Vec<(f64, f64)>,
    pub depth_mean: f64,
    pub depth_second_moment: f64,
    pub depth_second_moment_closed_form: f64,
    pub diameter_constants: DiameterReport,
}

#[derive(Debug, thiserror::Error)]
pub enum TheoryError {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Fraction(#[from] fractions::FractionError),
    #[error("report needs n >= 1, got {0}")]
    EmptyNetwork(u64),
}

/// Evaluate the full report. `degree_cap` bounds how many degree classes
/// the fraction and count maps carry (the classes above the cap add
/// nothing at the report scale).
pub fn theory_report(k: u32, n: u64, degree_cap: u64) -> Result<TheoryReport, TheoryError> {
    if n == 0 {
        return Err(TheoryError::EmptyNetwork(n));
    }
    let j_max = (k as u64 + n - 1).min(k as u64 + degree_cap);
    let mut b_fractions = BTreeMap::new();
    let mut expected_counts = BTreeMap::new();
    // build b(j) incrementally instead of restarting the product per j
    let mut b = fractions::limit_fraction(k as u64, k)?;
    for j in k as u64..=j_max {
        if j > k as u64 {
            let prev = j - 1;
            b *= BigRational::new(
                num::bigint::BigInt::from(prev),
                num::bigint::BigInt::from(prev + k as u64),
            );
        }
        b_fractions.insert(j, FractionValue::from_rational(&b));
        expected_counts.insert(j, fractions::expected_degree_count(n, j, k)?);
    }
    let d = diameter::diameter_constants(k)?;
    Ok(TheoryReport {
        k,
        n,
        b_fractions,
        expected_counts,
        clustering_limit: clustering::clustering_limit(k)?,
        gini_closed_form: lorenz::theoretical_gini(n, k),
        gini_asymptotic_form: lorenz::theoretical_gini_asymptotic(n, k),
        lorenz_points: lorenz::theoretical_lorenz(n, k),
        depth_mean: depth::expected_total_depth(n, k),
        depth_second_moment: depth::total_depth_second_moment(n, k),
        depth_second_moment_closed_form: depth::second_moment_closed_form_comparison(n, k),
        diameter_constants: DiameterReport {
            eta_star: d.eta_star,
            a: d.a,
            c: d.c,
        },
    })
}
