//! Embedding K_{2,3}-induced-minor-free graphs into graphs of tree-width at
//! most two with constant additive distortion.
//!
//! The pipeline is: [`layering::build_layering`] computes the clusters of a
//! BFS layering from a root, [`embed::embed`] wires every cluster to its
//! parent set to produce the host graph `H`, and the [`checks`] module
//! certifies the result (distance bounds, tree-width, forbidden induced
//! structures). [`oracles`] holds brute-force recognizers used to certify
//! inputs, [`generators`] produces seeded test corpora, and [`diameter`]
//! approximates the diameter of `G` by measuring `H`.

pub mod checks;
pub mod cli;
pub mod diameter;
pub mod embed;
pub mod generators;
pub mod graph;
pub mod layering;
pub mod oracles;
pub mod search;
mod unionfind;
pub mod witness;

pub use embed::{embed, EmbedMode, EmbeddingResult};
pub use graph::Graph;
pub use layering::{build_layering, LayeringPartition};

/// Additive distortion constant guaranteed for every pair of vertices.
pub const DISTORTION_BOUND: u32 = 2470;
