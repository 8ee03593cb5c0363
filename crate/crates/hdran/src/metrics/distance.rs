//! Wiener index and diameter by breadth-first search.
//!
//! Exact mode sweeps every source vertex; the sweep partitions sources
//! across worker threads and reduces with plain integer sums, so serial
//! and parallel runs agree bit for bit. Each worker reuses a distance
//! buffer stamped with a visit epoch instead of clearing it per source,
//! which matters once the replicated studies run millions of traversals.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::generator::{Network, VertexId};
use crate::metrics::MetricsError;
use crate::rng::Xoshiro256StarStar;

/// Default vertex budget for the all-sources sweep.
pub const DEFAULT_EXACT_BUDGET: u64 = 50_000;

/// Environment variable overriding the exact-mode vertex budget.
pub const BUDGET_ENV_VAR: &str = "HDRAN_EXACT_DISTANCE_BUDGET";

pub fn exact_budget() -> u64 {
    std::env::var(BUDGET_ENV_VAR)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_EXACT_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    /// BFS from every vertex.
    Exact,
    /// BFS from a seeded uniform subset of sources; unbiased Wiener
    /// estimator, diameter becomes a lower bound.
    Sampled { sources: u32, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceReport {
    /// Sum of distances over unordered vertex pairs (exact mode), or the
    /// unbiased estimator rounded to the nearest integer (sampled mode).
    pub wiener: u64,
    /// Exact diameter, or a lower bound in sampled mode.
    pub diameter: u32,
    pub source_count: u32,
}

struct BfsScratch {
    dist: Vec<u32>,
    epoch: Vec<u32>,
    current: u32,
    queue: VecDeque<VertexId>,
}

impl BfsScratch {
    fn new(vertices: usize) -> Self {
        Self {
            dist: vec![0; vertices],
            epoch: vec![0; vertices],
            current: 0,
            queue: VecDeque::with_capacity(vertices),
        }
    }

    /// Run one BFS; returns (sum of distances from source, eccentricity).
    fn sweep(&mut self, net: &Network, source: VertexId) -> (u64, u32) {
        self.current += 1;
        let epoch = self.current;
        self.queue.clear();
        self.dist[source as usize] = 0;
        self.epoch[source as usize] = epoch;
        self.queue.push_back(source);
        let mut sum = 0u64;
        let mut ecc = 0u32;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize];
            for &v in net.neighbors(u) {
                if self.epoch[v as usize] != epoch {
                    self.epoch[v as usize] = epoch;
                    let d = du + 1;
                    self.dist[v as usize] = d;
                    sum += d as u64;
                    ecc = ecc.max(d);
                    self.queue.push_back(v);
                }
            }
        }
        (sum, ecc)
    }
}

/// Distance statistics for a connected network, with the exact-mode
/// budget taken from the environment (or its default).
pub fn distance_metrics(net: &Network, mode: DistanceMode) -> Result<DistanceReport, MetricsError> {
    distance_metrics_with_budget(net, mode, exact_budget())
}

/// Distance statistics with an explicit exact-mode vertex budget.
pub fn distance_metrics_with_budget(
    net: &Network,
    mode: DistanceMode,
    budget: u64,
) -> Result<DistanceReport, MetricsError> {
    let v = net.vertex_count();
    match mode {
        DistanceMode::Exact => {
            if v > budget {
                return Err(MetricsError::BudgetExceeded {
                    vertices: v,
                    budget,
                });
            }
            let sources: Vec<VertexId> = (0..v as u32).collect();
            let (ordered_sum, diameter) = sweep_sources(net, &sources);
            Ok(DistanceReport {
                wiener: ordered_sum / 2,
                diameter,
                source_count: v as u32,
            })
        }
        DistanceMode::Sampled { sources, seed } => {
            let count = (sources as u64).min(v) as u32;
            let chosen = sample_without_replacement(v as u32, count, seed);
            let (sum, diameter_lb) = sweep_sources(net, &chosen);
            // E[sum of distances from a uniform source] = 2 W / V
            let estimate = v as f64 * sum as f64 / (2.0 * count as f64);
            Ok(DistanceReport {
                wiener: estimate.round() as u64,
                diameter: diameter_lb,
                source_count: count,
            })
        }
    }
}

fn sweep_sources(net: &Network, sources: &[VertexId]) -> (u64, u32) {
    let vertices = net.vertex_count() as usize;
    let chunk = 1 + sources.len() / (4 * rayon::current_num_threads().max(1));
    sources
        .par_chunks(chunk)
        .map(|chunk_sources| {
            let mut scratch = BfsScratch::new(vertices);
            let mut sum = 0u64;
            let mut ecc = 0u32;
            for &s in chunk_sources {
                let (d, e) = scratch.sweep(net, s);
                sum += d;
                ecc = ecc.max(e);
            }
            (sum, ecc)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)))
}

/// Partial Fisher-Yates over vertex ids.
fn sample_without_replacement(population: u32, count: u32, seed: u64) -> Vec<VertexId> {
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut ids: Vec<VertexId> = (0..population).collect();
    for i in 0..count as usize {
        let j = i + rng.next_bounded((population as usize - i) as u64) as usize;
        ids.swap(i, j);
    }
    ids.truncate(count as usize);
    ids
}
