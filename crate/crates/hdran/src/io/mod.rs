//! Canonical text serialization of networks, plus CSV and SVG emission.

pub mod csv;
pub mod svg;

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generator::{
    expected_active_cliques, expected_edge_count, expected_vertex_count, Network, VertexId,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
}

fn validation(msg: String) -> FileError {
    FileError::Validation(msg)
}

/// One active clique in the file: its sorted vertex ids and its depth.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CliqueEntry {
    pub vertices: Vec<VertexId>,
    pub depth: u32,
}

/// The on-disk network format. Edges are `u < v` pairs sorted
/// lexicographically; active cliques appear in arena (creation) order.
/// Writing the same network twice yields identical bytes.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NetworkFile {
    pub schema_version: u32,
    pub k: u32,
    pub n: u64,
    pub seed: u64,
    pub edges: Vec<(VertexId, VertexId)>,
    pub active_cliques: Vec<CliqueEntry>,
}

impl NetworkFile {
    pub fn from_network(net: &Network) -> Self {
        let mut edges = Vec::with_capacity(net.edge_count() as usize);
        for u in 0..net.vertex_count() as u32 {
            for &v in net.neighbors(u) {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        let active_cliques = net
            .active_cliques()
            .map(|c| CliqueEntry {
                vertices: c.vertices.to_vec(),
                depth: c.depth,
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            k: net.index_k(),
            n: net.time_n(),
            seed: net.seed(),
            edges,
            active_cliques,
        }
    }

    /// Validate every structural invariant and rebuild the in-memory
    /// network.
    pub fn into_network(self) -> Result<Network, FileError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(validation(format!(
                "unsupported schema_version {}, expected {}",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        if self.k < 3 {
            return Err(validation(format!(
                "network index must be at least 3, got {}",
                self.k
            )));
        }
        let vertices = expected_vertex_count(self.k, self.n);
        let want_edges = expected_edge_count(self.k, self.n);
        if self.edges.len() as u64 != want_edges {
            return Err(validation(format!(
                "edge count must equal k(k-1)/2 + n*k = {} for k={}, n={}; file has {}",
                want_edges,
                self.k,
                self.n,
                self.edges.len()
            )));
        }
        let want_active = expected_active_cliques(self.k, self.n);
        if self.active_cliques.len() as u64 != want_active {
            return Err(validation(format!(
                "active clique count must equal 1 + (k-1)n = {} for k={}, n={}; file has {}",
                want_active,
                self.k,
                self.n,
                self.active_cliques.len()
            )));
        }

        let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); vertices as usize];
        let mut prev: Option<(VertexId, VertexId)> = None;
        for &(u, v) in &self.edges {
            if u >= v {
                return Err(validation(format!(
                    "edge ({u}, {v}) is not in u < v form"
                )));
            }
            if v as u64 >= vertices {
                return Err(validation(format!(
                    "edge ({u}, {v}) references a vertex id beyond k + n - 1 = {}",
                    vertices - 1
                )));
            }
            if let Some(p) = prev {
                if p >= (u, v) {
                    return Err(validation(format!(
                        "edges must be strictly sorted; ({u}, {v}) follows {p:?}"
                    )));
                }
            }
            prev = Some((u, v));
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
        }

        let is_edge = |u: VertexId, v: VertexId| adjacency[u as usize].binary_search(&v).is_ok();
        for (idx, clique) in self.active_cliques.iter().enumerate() {
            if clique.vertices.len() != self.k as usize {
                return Err(validation(format!(
                    "active clique {idx} has {} vertices, expected k = {}",
                    clique.vertices.len(),
                    self.k
                )));
            }
            if self.n > 0 && clique.depth == 0 {
                return Err(validation(format!(
                    "active clique {idx} has depth 0, reserved for the root of an unevolved network"
                )));
            }
            for (i, &u) in clique.vertices.iter().enumerate() {
                if u as u64 >= vertices {
                    return Err(validation(format!(
                        "active clique {idx} references vertex id {u} beyond k + n - 1"
                    )));
                }
                for &v in &clique.vertices[i + 1..] {
                    if u == v {
                        return Err(validation(format!(
                            "active clique {idx} repeats vertex id {u}"
                        )));
                    }
                    if !is_edge(u.min(v), u.max(v)) {
                        return Err(validation(format!(
                            "active clique {idx} members {u} and {v} are not adjacent"
                        )));
                    }
                }
            }
        }

        let active = self
            .active_cliques
            .into_iter()
            .map(|c| (c.vertices, c.depth))
            .collect();
        Ok(Network::from_parts(
            self.k, self.n, self.seed, adjacency, want_edges, active,
        ))
    }
}

/// Serialize a network to pretty JSON at `path`.
pub fn save_network(net: &Network, path: &Path) -> Result<(), FileError> {
    let file = NetworkFile::from_network(net);
    let body = serde_json::to_string_pretty(&file).expect("serialization cannot fail");
    fs::write(path, body + "\n").map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Load and fully validate a network file.
pub fn load_network(path: &Path) -> Result<Network, FileError> {
    let body = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: NetworkFile = serde_json::from_str(&body).map_err(|e| FileError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_network()
}
