//! Seeded Monte Carlo replication and theory-versus-empirics validation.
//!
//! Replicates are independent work units: replicate `i` owns a generator
//! seeded by a stateless mix of `(master_seed, i)` and its own scratch
//! memory, so any replicate reproduces standalone and the batch may run
//! in parallel. Aggregation is keyed by replicate index, which makes the
//! output identical whether the batch ran serially or concurrently.

pub mod normality;
pub mod wiener;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generator::{GeneratorError, Network};
use crate::metrics::{
    class_lorenz_gini, degree_histogram, distance_metrics_with_budget, empirical_lorenz_gini,
    DistanceMode, MetricsError,
};
use crate::rng::replicate_seed;
use crate::theory::TheoryReport;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error("replicate count must be >= 1")]
    NoReplicates,
    #[error("summaries were produced for k={got_k}, n={got_n}, but the theory report is for k={want_k}, n={want_n}")]
    Mismatch {
        got_k: u32,
        got_n: u64,
        want_k: u32,
        want_n: u64,
    },
    #[error("normality test needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("normality test is undefined for zero-variance samples")]
    ZeroVariance,
}

/// What to measure per replicate. Degree fractions, clustering, the two
/// Gini constructions and the depth census are cheap and controlled by the
/// first four flags; `Wiener`/`Diameter` run the all-sources BFS sweep and
/// are budget checked before anything is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measurement {
    Degrees,
    Clustering,
    Gini,
    Depth,
    Wiener,
    Diameter,
}

pub type Measurements = BTreeSet<Measurement>;

pub fn all_measurements() -> Measurements {
    use Measurement::*;
    BTreeSet::from([Degrees, Clustering, Gini, Depth, Wiener, Diameter])
}

/// Per-replicate statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateSummary {
    pub replicate_index: u32,
    pub seed: u64,
    /// Newcomer degree fractions `j -> X(n, j) / n`.
    pub degree_fractions: BTreeMap<u64, f64>,
    /// All-vertex degree counts, kept for the concentration probe.
    pub degree_counts_all: BTreeMap<u64, u64>,
    pub clustering_avg: Option<f64>,
    /// Vertex-level Lorenz Gini.
    pub gini: Option<f64>,
    /// Class-based Lorenz Gini (the construction the closed form is about).
    pub gini_class: Option<f64>,
    pub total_depth: Option<u64>,
    pub wiener: Option<u64>,
    pub diameter: Option<u32>,
}

/// Run `reps` seeded replicates of `(k, n)` and measure each one.
pub fn run_replicates(
    k: u32,
    n: u64,
    reps: u32,
    master_seed: u64,
    measurements: &Measurements,
) -> Result<Vec<ReplicateSummary>, ExperimentError> {
    if reps == 0 {
        return Err(ExperimentError::NoReplicates);
    }
    let needs_distances = measurements.contains(&Measurement::Wiener)
        || measurements.contains(&Measurement::Diameter);
    let budget = crate::metrics::distance::exact_budget();
    if needs_distances && k as u64 + n > budget {
        // refuse up front: no partial batch is ever emitted
        return Err(MetricsError::BudgetExceeded {
            vertices: k as u64 + n,
            budget,
        }
        .into());
    }
    (0..reps)
        .into_par_iter()
        .map(|i| {
            let seed = replicate_seed(master_seed, i as u64);
            let net = Network::generate(k, n, seed)?;
            measure_one(&net, i, seed, measurements, budget)
        })
        .collect()
}

fn measure_one(
    net: &Network,
    index: u32,
    seed: u64,
    measurements: &Measurements,
    budget: u64,
) -> Result<ReplicateSummary, ExperimentError> {
    let hist = degree_histogram(net);
    let degree_fractions = hist.newcomer_fractions();

    let clustering_avg = if measurements.contains(&Measurement::Clustering) {
        Some(crate::metrics::clustering_profile(net)?.average)
    } else {
        None
    };

    let (gini, gini_class) = if measurements.contains(&Measurement::Gini) {
        let degrees: Vec<u64> = (0..net.vertex_count() as u32)
            .map(|v| net.degree(v) as u64)
            .collect();
        let (_, g) = empirical_lorenz_gini(&degrees)?;
        let (_, gc) = class_lorenz_gini(&hist);
        (Some(g), Some(gc))
    } else {
        (None, None)
    };

    let total_depth = if measurements.contains(&Measurement::Depth) {
        Some(net.clique_census().total_depth)
    } else {
        None
    };

    let needs_distances = measurements.contains(&Measurement::Wiener)
        || measurements.contains(&Measurement::Diameter);
    let (wiener, diameter) = if needs_distances {
        let r = distance_metrics_with_budget(net, DistanceMode::Exact, budget)?;
        (
            measurements
                .contains(&Measurement::Wiener)
                .then_some(r.wiener),
            measurements
                .contains(&Measurement::Diameter)
                .then_some(r.diameter),
        )
    } else {
        (None, None)
    };

    Ok(ReplicateSummary {
        replicate_index: index,
        seed,
        degree_fractions,
        degree_counts_all: hist.counts_all,
        clustering_avg,
        gini,
        gini_class,
        total_depth,
        wiener,
        diameter,
    })
}

/// One theory-versus-empirics comparison row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationRow {
    pub metric: String,
    pub empirical_mean: f64,
    pub empirical_se: f64,
    pub theory: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Binding rows drive the validation verdict. Non-binding rows compare
    /// quantities that are constructed differently on purpose (the
    /// vertex-level Gini against the class-based closed form); their gap
    /// is the information.
    pub binding: bool,
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn row(metric: &str, values: &[f64], theory: f64, extra_tolerance: f64) -> ValidationRow {
    let (mean, se) = mean_and_se(values);
    let tolerance = (3.0 * se).max(extra_tolerance);
    let abs_diff = (mean - theory).abs();
    ValidationRow {
        metric: metric.to_string(),
        empirical_mean: mean,
        empirical_se: se,
        theory,
        abs_diff,
        tolerance,
        pass: abs_diff <= tolerance,
        binding: true,
    }
}

/// Known finite-size allowance for the class-based Gini: the empirical
/// class proportions fluctuate around the smooth limit fractions, which
/// biases the sorted cumulative curve by a few 1e-4 at the study sizes.
const CLASS_GINI_ALLOWANCE: f64 = 5e-4;

/// Compare replicate summaries against a theory report.
///
/// Degree rows use the limit-fraction bound `2k^2/(2k-1)` (per count,
/// divided by n for fractions) plus three standard errors. The two Gini
/// rows intentionally compare different curve constructions against the
/// same closed form: the class-based row is the like-for-like comparison,
/// while the vertex-level row documents how far the standard inequality
/// measure sits from the class construction. The vertex row failing is
/// the expected outcome, not a bug.
pub fn validate_against_theory(
    summaries: &[ReplicateSummary],
    theory: &TheoryReport,
    summary_k: u32,
    summary_n: u64,
) -> Result<Vec<ValidationRow>, ExperimentError> {
    if summaries.is_empty() {
        return Err(ExperimentError::NoReplicates);
    }
    if theory.k != summary_k || theory.n != summary_n {
        return Err(ExperimentError::Mismatch {
            got_k: summary_k,
            got_n: summary_n,
            want_k: theory.k,
            want_n: theory.n,
        });
    }
    let mut rows = Vec::new();
    let n = summary_n as f64;
    let k = summary_k as f64;
    let count_bound = 2.0 * k * k / (2.0 * k - 1.0);

    for (&j, frac) in &theory.b_fractions {
        let values: Vec<f64> = summaries
            .iter()
            .map(|s| s.degree_fractions.get(&j).copied().unwrap_or(0.0))
            .collect();
        rows.push(row(
            &format!("degree_fraction_j{j}"),
            &values,
            frac.value,
            count_bound / n,
        ));
    }

    let clustering: Vec<f64> = summaries.iter().filter_map(|s| s.clustering_avg).collect();
    if !clustering.is_empty() {
        rows.push(row(
            "clustering_avg",
            &clustering,
            theory.clustering_limit,
            0.005,
        ));
    }

    let gini_class: Vec<f64> = summaries.iter().filter_map(|s| s.gini_class).collect();
    if !gini_class.is_empty() {
        rows.push(row(
            "gini_class",
            &gini_class,
            theory.gini_closed_form,
            CLASS_GINI_ALLOWANCE,
        ));
    }
    let gini_vertex: Vec<f64> = summaries.iter().filter_map(|s| s.gini).collect();
    if !gini_vertex.is_empty() {
        let mut r = row(
            "gini_vertex",
            &gini_vertex,
            theory.gini_closed_form,
            CLASS_GINI_ALLOWANCE,
        );
        r.binding = false;
        rows.push(r);
    }

    let depths: Vec<f64> = summaries
        .iter()
        .filter_map(|s| s.total_depth.map(|d| d as f64))
        .collect();
    if !depths.is_empty() {
        rows.push(row("total_depth", &depths, theory.depth_mean, 0.0));
    }

    Ok(rows)
}

/// One row of the concentration probe table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationRow {
    pub lambda: f64,
    pub empirical_tail: f64,
    pub bound: f64,
    pub binomial_se: f64,
    /// True if the empirical tail exceeds the bound by more than three
    /// binomial standard errors.
    pub violation: bool,
}

/// Empirical tail probabilities of `|X(n, j) - mean|` against the
/// exponential bound `exp(-lambda^2 / (8 k n))`, on a caller-provided
/// lambda grid. Counts use the all-vertex histogram view.
pub fn concentration_probe(
    k: u32,
    n: u64,
    reps: u32,
    master_seed: u64,
    j: u64,
    lambda_grid: &[f64],
) -> Result<Vec<ConcentrationRow>, ExperimentError> {
    if reps == 0 {
        return Err(ExperimentError::NoReplicates);
    }
    let counts: Vec<f64> = (0..reps)
        .into_par_iter()
        .map(|i| {
            let seed = replicate_seed(master_seed, i as u64);
            let net = Network::generate(k, n, seed)?;
            let hist = degree_histogram(&net);
            Ok(hist.counts_all.get(&j).copied().unwrap_or(0) as f64)
        })
        .collect::<Result<Vec<f64>, GeneratorError>>()?;
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    let denom = 8.0 * k as f64 * n as f64;
    Ok(lambda_grid
        .iter()
        .map(|&lambda| {
            let hits = counts.iter().filter(|&&c| (c - mean).abs() >= lambda).count();
            let p = hits as f64 / counts.len() as f64;
            let bound = (-lambda * lambda / denom).exp();
            let se = (p * (1.0 - p) / counts.len() as f64).sqrt();
            ConcentrationRow {
                lambda,
                empirical_tail: p,
                bound,
                binomial_se: se,
                violation: p > bound + 3.0 * se,
            }
        })
        .collect())
}
