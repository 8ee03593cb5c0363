//! High-dimensional random Apollonian networks: generation by uniform
//! clique subdivision, empirical measurement, and evaluation of the
//! closed-form limits the measurements are validated against.
//!
//! The crate is organized along the pipeline:
//!
//! * [`generator`]: the evolving network itself, bit-reproducible from
//!   `(k, n, seed)`.
//! * [`theory`]: limit fractions, label-degree laws, clustering and Gini
//!   closed forms, depth moments, diameter constants.
//! * [`metrics`]: degree histograms, clustering profiles, Lorenz/Gini
//!   curves and distance statistics measured on generated networks.
//! * [`experiments`]: seeded replication, theory-versus-empirics
//!   validation, the concentration probe and the Wiener study.
//! * [`io`]: the canonical network file format plus CSV/SVG output.

pub mod experiments;
pub mod generator;
pub mod io;
pub mod metrics;
pub mod rng;
pub mod theory;

pub use generator::{GeneratorError, Network, VertexId};
