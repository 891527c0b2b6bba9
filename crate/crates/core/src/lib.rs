//! Allocation-only core of the (r,s)-nucleus decomposition.
//!
//! The pipeline is:
//!
//! 1. [`graph`]: a normalized, immutable CSR graph plus orderings and
//!    induced-density measurements.
//! 2. [`clique`]: enumeration of r-cliques and discovery of the s-cliques
//!    containing a given r-clique, either on demand or from a materialized
//!    supergraph.
//! 3. [`peel`]: the generalized Matula–Beck peeling that assigns a κ value
//!    to every r-clique.
//! 4. [`forest`]: extraction of all k-nuclei and their laminar containment
//!    forest, with size-filtered and chain-contracted views.
//! 5. [`metrics`]: density histograms, size/density scatters and overlap
//!    statistics over a forest view.
//!
//! [`oracle`] holds slow, exhaustive reference implementations used for
//! verification on small graphs.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, IO and the
//! command-line front-end live in the companion `nucleus` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod clique;
pub mod error;
pub mod forest;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod peel;
mod unionfind;

pub use clique::{CliqueIndex, Containment, OnDemand, Supergraph};
pub use error::Error;
pub use forest::{ForestView, NucleusForest, NucleusNode};
pub use graph::{Density, Graph, VertexSet};
pub use peel::{set_k, KappaAssignment, PeelOptions, Strategy};

/// Largest supported s (and therefore r + 1).
pub const MAX_CLIQUE: usize = 4;
