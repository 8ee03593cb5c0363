//! Empirical measurement on generated networks.

pub mod distance;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::generator::{Network, VertexId};

pub use distance::{
    distance_metrics, distance_metrics_with_budget, DistanceMode, DistanceReport,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("label j must satisfy 1 <= j <= n, got j={j}, n={n}")]
    LabelOutOfRange { j: u64, n: u64 },
    #[error("degree sequence is empty or all zero")]
    DegenerateDegrees,
    #[error(
        "exact distance mode refused for {vertices} vertices (budget {budget}); \
         use sampled mode or raise the budget"
    )]
    BudgetExceeded { vertices: u64, budget: u64 },
    #[error("clustering profile needs n >= 1, got n=0")]
    EmptyNetwork,
}

/// Degree counts in two views: every vertex, and newcomers only (ids >= k,
/// external labels >= 1). The newcomer view is the one the mean-count
/// recurrences describe; the initial vertices follow a different
/// recruitment law and pollute the comparison at small n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHistogram {
    pub counts_all: BTreeMap<u64, u64>,
    pub counts_newcomers: BTreeMap<u64, u64>,
    pub k: u32,
    pub n: u64,
}

pub fn degree_histogram(net: &Network) -> DegreeHistogram {
    let mut counts_all = BTreeMap::new();
    let mut counts_newcomers = BTreeMap::new();
    for v in 0..net.vertex_count() as u32 {
        let d = net.degree(v) as u64;
        *counts_all.entry(d).or_insert(0) += 1;
        if v >= net.index_k() {
            *counts_newcomers.entry(d).or_insert(0) += 1;
        }
    }
    DegreeHistogram {
        counts_all,
        counts_newcomers,
        k: net.index_k(),
        n: net.time_n(),
    }
}

impl DegreeHistogram {
    /// Newcomer degree fractions `j -> count / n`.
    pub fn newcomer_fractions(&self) -> BTreeMap<u64, f64> {
        let n = self.n as f64;
        self.counts_newcomers
            .iter()
            .map(|(&j, &c)| (j, c as f64 / n))
            .collect()
    }
}

/// Degree of the vertex with external label `j` (id `k - 1 + j`).
pub fn label_degree(net: &Network, j: u64) -> Result<u64, MetricsError> {
    if j < 1 || j > net.time_n() {
        return Err(MetricsError::LabelOutOfRange {
            j,
            n: net.time_n(),
        });
    }
    let id = (net.index_k() as u64 - 1 + j) as VertexId;
    Ok(net.degree(id) as u64)
}

/// Per-degree mean local clustering coefficients and the network average.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringProfile {
    /// degree -> mean measured coefficient over vertices of that degree
    pub per_degree: BTreeMap<u64, f64>,
    pub average: f64,
}

/// Number of edges among the neighbors of `v`, by sorted-list
/// intersection.
fn neighborhood_edges(net: &Network, v: VertexId) -> u64 {
    let nbrs = net.neighbors(v);
    let mut count = 0u64;
    for (i, &u) in nbrs.iter().enumerate() {
        // count w in nbrs[i+1..] adjacent to u via merge of sorted lists
        let adj_u = net.neighbors(u);
        let mut a = 0usize;
        let mut b = i + 1;
        while a < adj_u.len() && b < nbrs.len() {
            match adj_u[a].cmp(&nbrs[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    a += 1;
                    b += 1;
                }
            }
        }
    }
    count
}

/// Measure local clustering for every vertex by direct neighborhood edge
/// counting. For recruited vertices the neighborhood accumulates exactly
/// `k - 1` edges per degree increment on top of the birth clique, so the
/// measured coefficient must equal `(k-1)(2j-k)/(j(j-1))`; that identity
/// is asserted here. Initial vertices are measured as-is.
pub fn clustering_profile(net: &Network) -> Result<ClusteringProfile, MetricsError> {
    if net.time_n() == 0 {
        return Err(MetricsError::EmptyNetwork);
    }
    let k = net.index_k();
    let mut by_degree: BTreeMap<u64, (f64, u64)> = BTreeMap::new();
    let mut total = 0.0f64;
    for v in 0..net.vertex_count() as u32 {
        let deg = net.degree(v) as u64;
        let edges = neighborhood_edges(net, v);
        let coeff = 2.0 * edges as f64 / (deg as f64 * (deg as f64 - 1.0));
        if v >= k {
            let expected = k as u64 * (k as u64 - 1) / 2 + (k as u64 - 1) * (deg - k as u64);
            assert_eq!(
                edges, expected,
                "newcomer neighborhood edge count broke the subdivision invariant"
            );
        }
        let entry = by_degree.entry(deg).or_insert((0.0, 0));
        entry.0 += coeff;
        entry.1 += 1;
        total += coeff;
    }
    Ok(ClusteringProfile {
        per_degree: by_degree
            .into_iter()
            .map(|(d, (sum, cnt))| (d, sum / cnt as f64))
            .collect(),
        average: total / net.vertex_count() as f64,
    })
}

/// Vertex-level Lorenz curve of a degree sequence: degrees sorted
/// ascending, x = cumulative vertex fraction, y = cumulative degree
/// fraction. Gini by the trapezoid rule.
pub fn empirical_lorenz_gini(degrees: &[u64]) -> Result<(Vec<(f64, f64)>, f64), MetricsError> {
    if degrees.is_empty() || degrees.iter().all(|&d| d == 0) {
        return Err(MetricsError::DegenerateDegrees);
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let m = sorted.len() as f64;
    let total: u64 = sorted.iter().sum();
    let mut points = Vec::with_capacity(sorted.len() + 1);
    points.push((0.0, 0.0));
    let mut acc = 0u64;
    for (i, d) in sorted.iter().enumerate() {
        acc += d;
        points.push(((i as f64 + 1.0) / m, acc as f64 / total as f64));
    }
    let gini = 1.0 - 2.0 * crate::theory::lorenz::trapezoid_area(&points);
    Ok((points, gini))
}

/// Class-based Lorenz curve mirroring the theoretical construction: the
/// `n + 1` admissible degree classes `k ..= k+n` carry vertex proportions
/// `X_j / (n + k)`, sorted ascending over `n + 1` equal segments of the
/// unit interval. This is the construction whose Gini the closed form
/// describes; it differs from the vertex-level curve by design.
pub fn class_lorenz_gini(hist: &DegreeHistogram) -> (Vec<(f64, f64)>, f64) {
    let classes = hist.n + 1;
    let vertices = (hist.n + hist.k as u64) as f64;
    let mut proportions: Vec<u64> = Vec::with_capacity(classes as usize);
    let mut nonzero: Vec<u64> = hist.counts_all.values().copied().collect();
    nonzero.sort_unstable();
    // zeros for every empty class, then the occupied classes ascending
    let zeros = classes as usize - nonzero.len();
    proportions.resize(zeros, 0);
    proportions.extend(nonzero);

    let mut points = Vec::with_capacity(classes as usize + 1);
    points.push((0.0, 0.0));
    let mut acc = 0u64;
    for (i, c) in proportions.iter().enumerate() {
        acc += c;
        points.push((
            (i as f64 + 1.0) / classes as f64,
            acc as f64 / vertices,
        ));
    }
    let gini = 1.0 - 2.0 * crate::theory::lorenz::trapezoid_area(&points);
    (points, gini)
}
