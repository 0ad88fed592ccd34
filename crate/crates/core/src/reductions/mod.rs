//! Hardness gadgets, used as instance generators and as equivalence oracles.

mod dominating_set;
mod dsc;
mod hitting_set;
mod sat;
pub mod source_formats;

use serde::{Deserialize, Serialize};

pub use dominating_set::{
    dominating_set_from_connecting_set, reduce_dominating_set, DominatingSetGadget,
};
pub use dsc::{covers_from_merges, merges_from_covers, reduce_dsc, DscReduction};
pub use hitting_set::{hitting_set_from_connecting_set, reduce_hitting_set, HittingSetGadget};
pub use sat::{reduce_3sat, CnfInstance, Literal, SatGadget};

use crate::error::{Error, Result};
use crate::temporal_graph::VertexId;

/// Which candidate set a generator emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CandidateMode {
    /// Only the edges the forward direction of the proof uses; keeps the
    /// augmented graph simple.
    #[default]
    #[serde(rename = "simple")]
    Simple,
    /// Every missing temporal edge within the lifespan.
    #[serde(rename = "unrestricted")]
    Unrestricted,
}

/// A static undirected graph with a budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaticGraphInstance {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub k: usize,
}

impl StaticGraphInstance {
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>, k: usize) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { v: x, n });
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(StaticGraphInstance { n, edges: norm, k })
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// A universe `0..n` and a collection of subsets, with a budget or target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetSystemInstance {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetSystemInstance {
    pub fn new(n: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<Self> {
        let mut norm = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.last() {
                if x >= n {
                    return Err(Error::contract(format!("element {x} outside universe 0..{n}")));
                }
            }
            norm.push(s);
        }
        Ok(SetSystemInstance { n, sets: norm, k })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }
}
