//! Network evolution by uniform clique subdivision.
//!
//! A network of index `k` starts as the complete graph on `k` vertices with
//! a single active `k`-clique of depth 0. Each step picks an active clique
//! uniformly at random, deactivates it, attaches a new vertex to all of its
//! members and activates the `k` new cliques obtained by swapping the new
//! vertex for each old member in turn. Children sit one depth level below
//! the clique they came from.
//!
//! Deterministic counts after `n` steps:
//!
//! * vertices: `k + n`
//! * edges: `k(k-1)/2 + n*k`
//! * active cliques: `1 + (k-1)*n`
//!
//! The initial vertices get ids `0..k`; the newcomer of step `t` gets id
//! `k - 1 + t`, so external "label j" maps to id `k - 1 + j` for `j >= 1`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::rng::Xoshiro256StarStar;

pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("network index must be at least 3, got {0}")]
    IndexTooSmall(u32),
    #[error("resource limit exceeded: k={k}, n={n} needs more than {limit} vertex ids")]
    TooLarge { k: u32, n: u64, limit: u64 },
    #[error("network has no random state; build it with generate() or seed it first")]
    Unseeded,
}

/// Expected vertex count after `n` steps.
pub fn expected_vertex_count(k: u32, n: u64) -> u64 {
    k as u64 + n
}

/// Expected edge count after `n` steps: the initial complete graph plus `k`
/// edges per newcomer.
pub fn expected_edge_count(k: u32, n: u64) -> u64 {
    let k = k as u64;
    k * (k - 1) / 2 + n * k
}

/// Expected number of active cliques after `n` steps.
pub fn expected_active_cliques(k: u32, n: u64) -> u64 {
    1 + (k as u64 - 1) * n
}

/// One clique in the arena. `vertices` is sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueRecord {
    pub vertices: Vec<VertexId>,
    pub depth: u32,
    pub active: bool,
}

/// Flat clique storage: all cliques ever created, `k` vertex ids each.
#[derive(Debug, Clone, PartialEq, Eq)]
struct CliqueArena {
    stride: usize,
    vertices: Vec<VertexId>,
    depths: Vec<u32>,
    active: Vec<bool>,
}

impl CliqueArena {
    fn new(stride: usize) -> Self {
        Self {
            stride,
            vertices: Vec::new(),
            depths: Vec::new(),
            active: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.depths.len()
    }

    fn push(&mut self, vertices: &[VertexId], depth: u32) -> u32 {
        debug_assert_eq!(vertices.len(), self.stride);
        self.vertices.extend_from_slice(vertices);
        self.depths.push(depth);
        self.active.push(true);
        (self.depths.len() - 1) as u32
    }

    fn vertices_of(&self, id: u32) -> &[VertexId] {
        let i = id as usize * self.stride;
        &self.vertices[i..i + self.stride]
    }
}

/// A view of one active clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueView<'a> {
    pub vertices: &'a [VertexId],
    pub depth: u32,
}

/// Depth census over the active cliques.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueCensus {
    pub active_count: u64,
    pub depth_counts: BTreeMap<u32, u64>,
    pub total_depth: u64,
}

/// The evolving network: adjacency, clique arena and the dense list of
/// active clique ids.
///
/// Evolution is strictly sequential (single writer). Once generation is
/// done the structure is immutable and can be shared across threads.
#[derive(Debug, Clone)]
pub struct Network {
    k: u32,
    n: u64,
    seed: u64,
    adjacency: Vec<Vec<VertexId>>,
    cliques: CliqueArena,
    /// Arena ids of the active cliques, order unspecified (swap-removal).
    active_ids: Vec<u32>,
    edges: u64,
    rng: Option<Xoshiro256StarStar>,
}

impl Network {
    /// The complete graph on `k` vertices with its single active clique of
    /// depth 0. No random state yet; seed it via [`Network::generate`] or
    /// [`Network::seed_rng`].
    pub fn initial(k: u32) -> Result<Self, GeneratorError> {
        if k < 3 {
            return Err(GeneratorError::IndexTooSmall(k));
        }
        let ku = k as usize;
        let mut adjacency = Vec::with_capacity(ku);
        for v in 0..k {
            let mut row: Vec<VertexId> = (0..k).filter(|&u| u != v).collect();
            row.sort_unstable();
            adjacency.push(row);
        }
        let mut cliques = CliqueArena::new(ku);
        let root: Vec<VertexId> = (0..k).collect();
        let root_id = cliques.push(&root, 0);
        Ok(Self {
            k,
            n: 0,
            seed: 0,
            adjacency,
            cliques,
            active_ids: vec![root_id],
            edges: k as u64 * (k as u64 - 1) / 2,
            rng: None,
        })
    }

    /// Deterministic construction: `initial(k)` followed by `n` random steps
    /// driven by a fixed generator seeded with `seed`. Identical output for
    /// identical `(k, n, seed)` on every platform.
    pub fn generate(k: u32, n: u64, seed: u64) -> Result<Self, GeneratorError> {
        if k as u64 + n > u32::MAX as u64 {
            return Err(GeneratorError::TooLarge {
                k,
                n,
                limit: u32::MAX as u64,
            });
        }
        let mut net = Self::initial(k)?;
        net.seed_rng(seed);
        net.adjacency.reserve(n as usize);
        for _ in 0..n {
            net.evolve_step()?;
        }
        Ok(net)
    }

    /// Install the random state used by [`Network::evolve_step`].
    pub fn seed_rng(&mut self, seed: u64) {
        self.seed = seed;
        self.rng = Some(Xoshiro256StarStar::seed_from_u64(seed));
    }

    /// One evolution step with the clique chosen uniformly at random.
    /// Returns the id of the new vertex.
    pub fn evolve_step(&mut self) -> Result<VertexId, GeneratorError> {
        let len = self.active_ids.len() as u64;
        let pos = match self.rng.as_mut() {
            Some(rng) => rng.next_bounded(len) as usize,
            None => return Err(GeneratorError::Unseeded),
        };
        Ok(self.subdivide_at(pos))
    }

    /// One evolution step subdividing the active clique at position `pos` of
    /// the active list. Deterministic; lets callers replay explicit choice
    /// sequences. Position order is an implementation detail of swap-removal,
    /// so only the uniform draw in [`Network::evolve_step`] has a
    /// distributional meaning.
    ///
    /// Panics if `pos` is out of bounds.
    pub fn subdivide_at(&mut self, pos: usize) -> VertexId {
        let clique_id = self.active_ids.swap_remove(pos);
        self.cliques.active[clique_id as usize] = false;
        let depth = self.cliques.depths[clique_id as usize];

        let new_vertex = (self.k as u64 + self.n) as VertexId;
        self.n += 1;

        let member_start = clique_id as usize * self.cliques.stride;
        let member_end = member_start + self.cliques.stride;
        let members: Vec<VertexId> = self.cliques.vertices[member_start..member_end].to_vec();

        // New vertex id exceeds every existing id, so pushing keeps every
        // adjacency row sorted.
        for &u in &members {
            self.adjacency[u as usize].push(new_vertex);
        }
        self.adjacency.push(members.clone());
        self.edges += self.k as u64;

        let mut child = Vec::with_capacity(self.cliques.stride);
        for omit in 0..members.len() {
            child.clear();
            child.extend(members.iter().enumerate().filter_map(|(i, &v)| {
                if i == omit {
                    None
                } else {
                    Some(v)
                }
            }));
            child.push(new_vertex);
            let child_id = self.cliques.push(&child, depth + 1);
            self.active_ids.push(child_id);
        }
        new_vertex
    }

    pub fn index_k(&self) -> u32 {
        self.k
    }

    pub fn time_n(&self) -> u64 {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn vertex_count(&self) -> u64 {
        self.adjacency.len() as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn active_clique_count(&self) -> u64 {
        self.active_ids.len() as u64
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    /// Sorted neighbor ids of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Active cliques in arena (creation) order.
    pub fn active_cliques(&self) -> impl Iterator<Item = CliqueView<'_>> {
        (0..self.cliques.len()).filter_map(move |i| {
            if self.cliques.active[i] {
                Some(CliqueView {
                    vertices: self.cliques.vertices_of(i as u32),
                    depth: self.cliques.depths[i],
                })
            } else {
                None
            }
        })
    }

    /// Count and depth distribution of the active cliques.
    pub fn clique_census(&self) -> CliqueCensus {
        let mut depth_counts = BTreeMap::new();
        let mut total_depth = 0u64;
        for &id in &self.active_ids {
            let d = self.cliques.depths[id as usize];
            *depth_counts.entry(d).or_insert(0) += 1;
            total_depth += d as u64;
        }
        CliqueCensus {
            active_count: self.active_ids.len() as u64,
            depth_counts,
            total_depth,
        }
    }

    /// Rebuild a network from validated parts (deserialization path). The
    /// arena holds only the cliques passed in; the random state is seeded
    /// fresh from `seed`, so further evolution will not continue the
    /// original stream.
    pub(crate) fn from_parts(
        k: u32,
        n: u64,
        seed: u64,
        adjacency: Vec<Vec<VertexId>>,
        edges: u64,
        active: Vec<(Vec<VertexId>, u32)>,
    ) -> Self {
        let mut cliques = CliqueArena::new(k as usize);
        let mut active_ids = Vec::with_capacity(active.len());
        for (vertices, depth) in &active {
            active_ids.push(cliques.push(vertices, *depth));
        }
        let mut net = Self {
            k,
            n,
            seed,
            adjacency,
            cliques,
            active_ids,
            edges,
            rng: None,
        };
        net.seed_rng(seed);
        net
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_k3_is_a_triangle() {
        let net = Network::initial(3).unwrap();
        assert_eq!(net.vertex_count(), 3);
        assert_eq!(net.edge_count(), 3);
        assert_eq!(net.active_clique_count(), 1);
        let census = net.clique_census();
        assert_eq!(census.total_depth, 0);
        assert_eq!(census.depth_counts.get(&0), Some(&1));
    }

    #[test]
    fn initial_k5_is_complete() {
        let net = Network::initial(5).unwrap();
        assert_eq!(net.vertex_count(), 5);
        assert_eq!(net.edge_count(), 10);
        assert_eq!(net.active_clique_count(), 1);
        for u in 0..5 {
            for v in (u + 1)..5 {
                assert!(net.has_edge(u, v));
            }
        }
    }

    #[test]
    fn index_below_three_is_rejected() {
        assert_eq!(
            Network::initial(2).unwrap_err(),
            GeneratorError::IndexTooSmall(2)
        );
        assert!(Network::generate(1, 5, 0).is_err());
    }

    #[test]
    fn evolve_without_seed_errors() {
        let mut net = Network::initial(3).unwrap();
        assert_eq!(net.evolve_step().unwrap_err(), GeneratorError::Unseeded);
    }

    #[test]
    fn first_step_counts_k3() {
        let mut net = Network::initial(3).unwrap();
        net.seed_rng(0);
        let v = net.evolve_step().unwrap();
        assert_eq!(v, 3);
        assert_eq!(net.vertex_count(), 4);
        assert_eq!(net.edge_count(), 6);
        assert_eq!(net.active_clique_count(), 3);
    }

    #[test]
    fn first_step_counts_k5() {
        let mut net = Network::initial(5).unwrap();
        net.seed_rng(9);
        net.evolve_step().unwrap();
        assert_eq!(net.vertex_count(), 6);
        assert_eq!(net.edge_count(), 15);
        assert_eq!(net.active_clique_count(), 5);
    }

    #[test]
    fn second_step_k3_degrees() {
        // All step-2 choices are isomorphic: 5 vertices, 9 edges, 5 active
        // cliques and exactly two vertices of degree 3.
        for seed in 0..10 {
            let net = Network::generate(3, 2, seed).unwrap();
            assert_eq!(net.vertex_count(), 5);
            assert_eq!(net.edge_count(), 9);
            assert_eq!(net.active_clique_count(), 5);
            let deg3 = (0..5).filter(|&v| net.degree(v) == 3).count();
            assert_eq!(deg3, 2);
        }
    }

    #[test]
    fn census_small_cases() {
        for seed in 0..5 {
            let net = Network::generate(3, 1, seed).unwrap();
            assert_eq!(net.clique_census().total_depth, 3);

            let net = Network::generate(5, 2, seed).unwrap();
            let census = net.clique_census();
            assert_eq!(census.total_depth, 14);
            assert_eq!(census.depth_counts.get(&1), Some(&4));
            assert_eq!(census.depth_counts.get(&2), Some(&5));

            let net = Network::generate(3, 2, seed).unwrap();
            assert_eq!(net.clique_census().total_depth, 8);
        }
    }

    #[test]
    fn generate_is_deterministic() {
        let a = Network::generate(3, 1000, 42).unwrap();
        let b = Network::generate(3, 1000, 42).unwrap();
        assert_eq!(a.adjacency, b.adjacency);
        assert_eq!(a.cliques, b.cliques);
        assert_eq!(a.active_ids, b.active_ids);
    }

    #[test]
    fn counts_match_formulas_across_k_and_n() {
        for k in 3..=10u32 {
            for &n in &[0u64, 1, 2, 17, 301] {
                let net = Network::generate(k, n, 1234 + n).unwrap();
                assert_eq!(net.vertex_count(), expected_vertex_count(k, n));
                assert_eq!(net.edge_count(), expected_edge_count(k, n));
                assert_eq!(net.active_clique_count(), expected_active_cliques(k, n));
            }
        }
    }

    #[test]
    fn newcomers_are_born_with_degree_k_and_min_degree_is_k() {
        let k = 4;
        let net = Network::generate(k, 200, 5).unwrap();
        let min_deg = (0..net.vertex_count() as u32)
            .map(|v| net.degree(v))
            .min()
            .unwrap();
        assert_eq!(min_deg, k as usize);
        // The newest vertex has never recruited.
        assert_eq!(net.degree((k as u64 + 199) as u32), k as usize);
    }

    #[test]
    fn active_cliques_are_mutually_adjacent() {
        let net = Network::generate(4, 100, 77).unwrap();
        for clique in net.active_cliques() {
            assert_eq!(clique.vertices.len(), 4);
            for (i, &u) in clique.vertices.iter().enumerate() {
                for &v in &clique.vertices[i + 1..] {
                    assert_ne!(u, v);
                    assert!(net.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn total_depth_strictly_increases() {
        let mut net = Network::initial(3).unwrap();
        net.seed_rng(11);
        let mut prev = net.clique_census().total_depth;
        for _ in 0..50 {
            net.evolve_step().unwrap();
            let cur = net.clique_census().total_depth;
            assert!(cur > prev);
            prev = cur;
        }
    }

    #[test]
    fn generate_rejects_id_overflow() {
        let err = Network::generate(3, u32::MAX as u64, 0).unwrap_err();
        assert!(matches!(err, GeneratorError::TooLarge { .. }));
    }

    #[test]
    fn networks_transfer_between_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Network>();
        let net = Network::generate(3, 50, 1).unwrap();
        let census = std::thread::spawn(move || net.clique_census())
            .join()
            .unwrap();
        assert_eq!(census.active_count, 101);
    }
}
