use super::{AugmentationProblem, CostModel, Requirement};
use crate::error::{Error, Result};
use crate::temporal_graph::{Semantics, TemporalEdge, TemporalGraph};

/// Optimal time-2 edges making a static graph (all edges at time 1)
/// non-strictly connected.
///
/// The vertices of a smallest time-1 component become star centers. Every
/// other component hands its vertices to the centers round-robin, so each
/// star picks up at least one vertex of every component. The result has
/// exactly `n - |smallest component|` edges, which matches the lower bound
/// `k₂ >= |smallest time-1 component|` for connected lifespan-2 graphs.
pub fn solve_one_plus_one(g: &TemporalGraph) -> Result<Vec<TemporalEdge>> {
    if g.lifespan() > 1 {
        return Err(Error::contract(format!(
            "one-extra-step augmentation needs lifespan 1, got {}",
            g.lifespan()
        )));
    }
    if g.n() == 0 {
        return Err(Error::contract("graph has no vertices"));
    }
    let (labels, k) = g.component_labels_at(1);
    let mut parts = vec![Vec::new(); k];
    for (v, &l) in labels.iter().enumerate() {
        parts[l].push(v);
    }
    // first smallest in canonical order
    let smallest = (0..k)
        .min_by_key(|&i| parts[i].len())
        .expect("n >= 1 gives at least one component");
    let centers = &parts[smallest];
    let mut out = Vec::with_capacity(g.n() - centers.len());
    for (i, part) in parts.iter().enumerate() {
        if i == smallest {
            continue;
        }
        for (j, &v) in part.iter().enumerate() {
            let center = centers[j % centers.len()];
            out.push(TemporalEdge::new(v, center, 2)?);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Necessary condition for a connected lifespan-2 graph: `k₁` is at most
/// the smallest time-2 component size and `k₂` at most the smallest time-1
/// component size.
pub fn component_count_bound_check(g: &TemporalGraph) -> Result<bool> {
    if g.lifespan() != 2 {
        return Err(Error::contract(format!(
            "component bound applies to lifespan 2, got {}",
            g.lifespan()
        )));
    }
    let c1 = g.snapshot_components(1)?;
    let c2 = g.snapshot_components(2)?;
    let min1 = c1.parts.iter().map(Vec::len).min().unwrap_or(0);
    let min2 = c2.parts.iter().map(Vec::len).min().unwrap_or(0);
    Ok(c1.len() <= min2 && c2.len() <= min1)
}

/// Encodes "keep at most `k` edges of the connected graph `g`" as an
/// augmentation instance: empty base on the same vertices and lifespan,
/// candidates are the edges of `g`, requirement is full connectivity.
pub fn spanner_via_tca(g: &TemporalGraph, k: usize) -> Result<AugmentationProblem> {
    if !g.is_temporally_connected(Semantics::NonStrict) {
        return Err(Error::contract("spanner input must be temporally connected"));
    }
    let base = TemporalGraph::edgeless(g.n()).with_lifespan(g.lifespan())?;
    Ok(AugmentationProblem::new(base, g.edges().to_vec(), Requirement::All)?
        .with_semantics(Semantics::NonStrict)
        .with_cost_model(CostModel::PerTemporalEdge)
        .with_budget(Some(k)))
}
