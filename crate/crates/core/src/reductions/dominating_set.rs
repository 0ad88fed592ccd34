use super::{CandidateMode, StaticGraphInstance};
use crate::augmentation::{unrestricted_candidates, verify_solution, AugmentationProblem, Requirement};
use crate::error::{Error, Result};
use crate::temporal_graph::{Semantics, TemporalEdge, TemporalGraph, VertexId};

/// Vertex layout of the strict lifespan-2 gadget: the source vertices keep
/// their indices `0..n`, followed by `x` and `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingSetGadget {
    pub n: usize,
    pub x: VertexId,
    pub y: VertexId,
}

/// Builds the strict temporal connectivity instance with budget `ds.k`.
///
/// Every pair inside `V ∪ {y}` is an edge: at time 2 if it is an edge of
/// the source graph, at time 1 otherwise. `{x,y}` sits at time 2. So every
/// vertex already reaches `x` through `y`, and the only missing journeys
/// start at `x`.
pub fn reduce_dominating_set(
    ds: &StaticGraphInstance,
    mode: CandidateMode,
) -> Result<(AugmentationProblem, DominatingSetGadget)> {
    let n = ds.n;
    let gadget = DominatingSetGadget { n, x: n, y: n + 1 };
    let mut edges = vec![TemporalEdge::new(gadget.x, gadget.y, 2)?];
    for a in 0..=n {
        for b in a + 1..=n {
            // index n stands for y in this loop
            let (u, v) = (a, if b == n { gadget.y } else { b });
            let t = if b < n && ds.has_edge(a, b) { 2 } else { 1 };
            edges.push(TemporalEdge::new(u, v, t)?);
        }
    }
    let names = (0..n)
        .map(|v| format!("v{v}"))
        .chain(["x".to_string(), "y".to_string()])
        .collect();
    let base = TemporalGraph::new(n + 2, edges)?
        .with_lifespan(2)?
        .with_names(names)?;
    let candidates = match mode {
        CandidateMode::Simple => (0..n)
            .map(|v| TemporalEdge::new(gadget.x, v, 1))
            .collect::<Result<Vec<_>>>()?,
        CandidateMode::Unrestricted => unrestricted_candidates(&base),
    };
    let problem = AugmentationProblem::new(base, candidates, Requirement::All)?
        .with_semantics(Semantics::Strict)
        .with_budget(Some(ds.k));
    Ok((problem, gadget))
}

impl DominatingSetGadget {
    /// Forward map: one edge `({x,u},1)` per vertex of the dominating set.
    pub fn connecting_set_from_dominating_set(&self, set: &[VertexId]) -> Result<Vec<TemporalEdge>> {
        let mut out = set
            .iter()
            .map(|&u| {
                if u >= self.n {
                    Err(Error::VertexOutOfRange { v: u, n: self.n })
                } else {
                    TemporalEdge::new(self.x, u, 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Backward map from any connecting set of the reduced instance to a
/// dominating set of at most the same size.
///
/// Edges at `x` contribute their other endpoint. A time-2 edge inside `V`
/// helps only when `x` reaches one end at time 1; it is swapped for the
/// other end. Everything else cannot lie on a journey from `x`.
pub fn dominating_set_from_connecting_set(
    problem: &AugmentationProblem,
    gadget: &DominatingSetGadget,
    f: &[TemporalEdge],
) -> Result<Vec<VertexId>> {
    if !verify_solution(problem, f)? {
        return Err(Error::contract("edge set does not make the gadget temporally connected"));
    }
    let in_v = |v: VertexId| v < gadget.n;
    let direct = |v: VertexId| f.contains(&TemporalEdge::new(gadget.x, v, 1).expect("x differs from v"));
    let mut set = Vec::new();
    for e in f {
        if let Some(v) = e.other(gadget.x) {
            if in_v(v) {
                set.push(v);
            }
        } else if e.t() == 2 && in_v(e.u()) && in_v(e.v()) {
            match (direct(e.u()), direct(e.v())) {
                (true, false) => set.push(e.v()),
                (false, true) => set.push(e.u()),
                _ => {}
            }
        }
    }
    set.sort_unstable();
    set.dedup();
    Ok(set)
}
