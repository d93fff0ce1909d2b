//! Kempe equivalence of graph k-colorings on small graphs.
//!
//! Two proper k-colorings of a graph are Kempe equivalent when a sequence
//! of Kempe swaps (exchanging two colors on one component of the subgraph
//! those colors induce) turns one into the other; Kc(G, k) counts the
//! equivalence classes. This crate computes Kc exactly on small graphs,
//! detects frozen colorings, builds the counterexample family `gk` whose
//! k-coloring space is disconnected despite few within-side edges, runs
//! the constructive confine-and-merge recoloring procedure, and batch
//! verifies graph6 streams with Kc-preserving reduction rules.
//!
//! Organization:
//! - [`graph`], [`graph6`], [`chromatic`]: bitset graphs, the graph6
//!   codec, exact coloring search.
//! - [`coloring`], [`enumerate`], [`kc`], [`merge`]: the coloring space,
//!   swaps, class computation, confinement and merging.
//! - [`constructions`]: the `hhat` core, the `gk` family, and the
//!   closed-form edge accountings.
//! - [`verify`], [`scan`], [`canonical`]: certificates, reduction rules,
//!   stream scanning, and small-order canonical generation.

pub mod canonical;
pub mod chromatic;
pub mod coloring;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod kc;
pub mod merge;
pub mod scan;
pub mod verify;

pub use coloring::{Coloring, KempeMove};
pub use error::{Error, Result};
pub use graph::{AlmostBipartiteView, Graph};
pub use kc::{KcReport, DEFAULT_CAP};
pub use verify::Certificate;
