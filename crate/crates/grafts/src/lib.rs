//! Minimum T-joins and the distance decomposition of bipartite grafts.
//!
//! A *graft* pairs a multigraph with a terminal set of even order per
//! component; a *join* is an edge set whose odd-degree vertices are
//! exactly the terminals. Around the minimum-join problem this crate
//! builds the full distance machinery: ±1 weightings from minimum joins,
//! distance profiles and their component families, vertex trisections,
//! factor components and the equal-distance (Kotzig–Lovász style)
//! partition, critical sets, a root-adding gadget, and a property-check
//! harness that validates the structural statements against brute-force
//! oracles on exhaustively or randomly generated instances.
//!
//! The `examples/` directory is the front door: each file is a runnable
//! walkthrough of one capability (`cargo run --example solve_basic`, …).
//! A thin `grafts` binary exposes the same operations on graft documents.

pub mod cli;
pub mod decomposition;
pub mod distance;
mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod join;
mod paths;
pub mod rootlize;

pub use error::Error;
pub use graph::{EdgeSet, Multigraph, PathWitness, VertexSet, MAX_EDGES, MAX_VERTICES};
pub use join::{Graft, JoinCertificate, MinimumJoins, SubgraftView};
