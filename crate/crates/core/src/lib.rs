//! Connectivity augmentation for temporal graphs.
//!
//! A temporal graph is a vertex set together with edges that exist only at
//! discrete time steps. A journey is a walk whose edge times never decrease
//! (non-strict) or strictly increase (strict). This crate decides which
//! temporal edges to add, out of a candidate set, so that the graph becomes
//! temporally connected, makes a given vertex a source, or satisfies a list
//! of ordered pair demands.
//!
//! Module map:
//!
//! * [`temporal_graph`]: the graph model, snapshots, journeys, reachability,
//!   and the component-chain characterization of non-strict connectivity.
//! * [`augmentation`]: problem model, exact minimum-cost search, the
//!   polynomial algorithm for one extra time step, the spanner bridge.
//! * [`octo`]: the lifespan-2 binary matrix reformulation (OR-combinations
//!   to a one-filled matrix).
//! * [`steiner_expansion`]: temporal expansion into a weighted directed
//!   graph and an exact pair-demand solver that runs on it.
//! * [`reductions`]: gadget generators from Dominating Set, Hitting Set,
//!   Disjoint Set Covers and 3-SAT, with witness translation both ways.

pub mod augmentation;
mod dsu;
pub mod error;
pub mod io;
pub mod octo;
pub mod reductions;
pub mod steiner_expansion;
pub mod temporal_graph;

pub use augmentation::{
    AugmentationProblem, CostModel, Outcome, PairDemands, Requirement, Solution,
};
pub use error::{Error, Result};
pub use octo::{Axis, BinaryMatrix, Merge, OctoOutcome, OctoSolution};
pub use steiner_expansion::{ExpansionGraph, ExpansionNode, TgSteinerInstance};
pub use temporal_graph::{
    Hop, Journey, Semantics, SnapshotComponents, TemporalEdge, TemporalGraph, Time, VertexId,
};

/// Version tag written into every JSON document the crate produces.
pub const SCHEMA_VERSION: u32 = 1;
