//! Shared test oracles, kept independent of the library's internal
//! representations: adjacency is tracked with hash sets, cliques as plain
//! vectors, and all probabilities are exact rationals.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Zero};

pub type Rat = Ratio<BigInt>;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn rat_u(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Minimal independent model of the subdivision process. The active list
/// uses the same swap-removal protocol as the library so that a sequence
/// of list positions addresses the same history in both implementations;
/// every measured quantity is recomputed from this model's own structures.
#[derive(Clone)]
pub struct OracleNet {
    pub k: usize,
    pub edges: HashSet<(u32, u32)>,
    pub degrees: Vec<u64>,
    /// (sorted vertex ids, depth) of each active clique.
    pub active: Vec<(Vec<u32>, u32)>,
}

impl OracleNet {
    pub fn initial(k: usize) -> Self {
        let mut edges = HashSet::new();
        for u in 0..k as u32 {
            for v in (u + 1)..k as u32 {
                edges.insert((u, v));
            }
        }
        Self {
            k,
            edges,
            degrees: vec![k as u64 - 1; k],
            active: vec![((0..k as u32).collect(), 0)],
        }
    }

    /// Subdivide the active clique at list position `pos` (swap-removed).
    pub fn subdivide(&mut self, pos: usize) {
        let (members, depth) = self.active.swap_remove(pos);
        let new_vertex = self.degrees.len() as u32;
        self.degrees.push(self.k as u64);
        for &u in &members {
            self.degrees[u as usize] += 1;
            self.edges.insert((u.min(new_vertex), u.max(new_vertex)));
        }
        for omit in 0..members.len() {
            let mut child: Vec<u32> = members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .map(|(_, &v)| v)
                .collect();
            child.push(new_vertex);
            child.sort_unstable();
            self.active.push((child, depth + 1));
        }
    }

    pub fn total_depth(&self) -> u64 {
        self.active.iter().map(|(_, d)| *d as u64).sum()
    }

    pub fn histogram_all(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for &d in &self.degrees {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    pub fn histogram_newcomers(&self) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for &d in &self.degrees[self.k..] {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    /// Degree of the vertex inserted at step `label` (1-based).
    pub fn label_degree(&self, label: u64) -> u64 {
        self.degrees[self.k - 1 + label as usize]
    }
}

/// Everything measured on one terminal history.
pub struct HistoryStats {
    pub positions: Vec<usize>,
    pub net: OracleNet,
}

/// Enumerate every choice history of length `n` for index `k`, invoking
/// `visit` on each terminal state. All histories are equiprobable, so the
/// caller can average by dividing by the history count.
pub fn enumerate_histories<F: FnMut(&HistoryStats)>(k: usize, n: u64, visit: &mut F) {
    let mut positions = Vec::new();
    let net = OracleNet::initial(k);
    recurse(net, n, &mut positions, visit);
}

fn recurse<F: FnMut(&HistoryStats)>(
    net: OracleNet,
    remaining: u64,
    positions: &mut Vec<usize>,
    visit: &mut F,
) {
    if remaining == 0 {
        visit(&HistoryStats {
            positions: positions.clone(),
            net,
        });
        return;
    }
    for pos in 0..net.active.len() {
        let mut next = net.clone();
        next.subdivide(pos);
        positions.push(pos);
        recurse(next, remaining - 1, positions, visit);
        positions.pop();
    }
}

/// Number of histories of length n: prod over steps of the active count.
pub fn history_count(k: u64, n: u64) -> u64 {
    (0..n).map(|t| 1 + (k - 1) * t).product()
}

/// Exact pmf of the label-`j` degree at time `n` from full enumeration:
/// `degree -> probability`.
pub fn enumerated_label_pmf(k: usize, n: u64, j: u64) -> BTreeMap<u64, Rat> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    enumerate_histories(k, n, &mut |h| {
        *counts.entry(h.net.label_degree(j)).or_insert(0) += 1;
    });
    let total = history_count(k as u64, n);
    counts
        .into_iter()
        .map(|(d, c)| (d, rat_u(c) / rat_u(total)))
        .collect()
}

/// Exact first and second moments of the total depth from enumeration.
pub fn enumerated_depth_moments(k: usize, n: u64) -> (Rat, Rat) {
    let mut sum = Rat::zero();
    let mut sum_sq = Rat::zero();
    enumerate_histories(k, n, &mut |h| {
        let d = rat_u(h.net.total_depth());
        sum += &d;
        sum_sq += &d * &d;
    });
    let total = rat_u(history_count(k as u64, n));
    (sum / &total, sum_sq / total)
}

/// Exact expected newcomer degree counts `j -> E[X(n, j)]` from
/// enumeration.
pub fn enumerated_expected_counts(k: usize, n: u64) -> BTreeMap<u64, Rat> {
    let mut sums: BTreeMap<u64, u64> = BTreeMap::new();
    enumerate_histories(k, n, &mut |h| {
        for (d, c) in h.net.histogram_newcomers() {
            *sums.entry(d).or_insert(0) += c;
        }
    });
    let total = rat_u(history_count(k as u64, n));
    sums.into_iter()
        .map(|(d, c)| (d, rat_u(c) / &total))
        .collect()
}

/// Exact pmf of the label-degree urn by dynamic programming over the
/// recruitment count, independent of both the closed form and the graph
/// enumeration. State: extra degree `delta`; a vertex with `delta` prior
/// recruitments sits in `k + (k-2) delta` of the `1 + (k-1)t` active
/// cliques at time t.
pub fn urn_pmf(k: u64, n: u64, j: u64) -> BTreeMap<u64, Rat> {
    let mut probs: BTreeMap<u64, Rat> = BTreeMap::from([(0, Rat::one())]);
    for tau in 1..=(n - j) {
        let total = rat_u((k - 1) * (j + tau - 1) + 1);
        let mut next: BTreeMap<u64, Rat> = BTreeMap::new();
        for (d, p) in probs {
            let white = rat_u(k + (k - 2) * d) / &total;
            *next.entry(d + 1).or_insert_with(Rat::zero) += &p * &white;
            *next.entry(d).or_insert_with(Rat::zero) += &p * (Rat::one() - &white);
        }
        probs = next;
    }
    probs
}
