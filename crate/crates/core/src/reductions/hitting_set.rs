use super::{CandidateMode, SetSystemInstance};
use crate::augmentation::{unrestricted_candidates, verify_solution, AugmentationProblem, Requirement};
use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::temporal_graph::{Semantics, TemporalEdge, TemporalGraph, VertexId};

/// Vertex layout: `x`, then one vertex per (element, set) incidence in
/// element-major order, then one vertex per set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetGadget {
    pub x: VertexId,
    /// `(element, set, vertex)`, sorted by element then set.
    pub incidences: Vec<(usize, usize, VertexId)>,
    pub set_vertices: Vec<VertexId>,
}

impl HittingSetGadget {
    pub fn incidence_vertex(&self, element: usize, set: usize) -> Option<VertexId> {
        self.incidences
            .binary_search_by_key(&(element, set), |&(e, s, _)| (e, s))
            .ok()
            .map(|i| self.incidences[i].2)
    }

    /// Forward map: `({x, eᵢSⱼ},1)` for each element of the hitting set,
    /// with `j` the smallest set containing it. Elements in no set are
    /// skipped since they have no vertex.
    pub fn connecting_set_from_hitting_set(&self, hitting: &[usize]) -> Result<Vec<TemporalEdge>> {
        let mut out = Vec::new();
        for &e in hitting {
            let first = self.incidences.iter().find(|&&(el, _, _)| el == e);
            if let Some(&(_, _, v)) = first {
                out.push(TemporalEdge::new(self.x, v, 1)?);
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Builds the non-strict single-source instance with budget `hs.k`.
/// At time 1 the incidences of one element form a clique; at time 2 each
/// incidence vertex `eᵢSⱼ` is joined to `Sⱼ`.
pub fn reduce_hitting_set(
    hs: &SetSystemInstance,
    mode: CandidateMode,
) -> Result<(AugmentationProblem, HittingSetGadget)> {
    if let Some(j) = hs.sets.iter().position(Vec::is_empty) {
        return Err(Error::contract(format!("set {j} is empty")));
    }
    let mut pairs: Vec<(usize, usize)> = hs
        .sets
        .iter()
        .enumerate()
        .flat_map(|(j, s)| s.iter().map(move |&e| (e, j)))
        .collect();
    pairs.sort_unstable();
    let incidences: Vec<(usize, usize, VertexId)> = pairs
        .iter()
        .enumerate()
        .map(|(k, &(e, j))| (e, j, 1 + k))
        .collect();
    let first_set = 1 + incidences.len();
    let set_vertices: Vec<VertexId> = (0..hs.m()).map(|j| first_set + j).collect();
    let mut edges = Vec::new();
    for (a, &(ea, _, va)) in incidences.iter().enumerate() {
        for &(eb, _, vb) in &incidences[a + 1..] {
            if ea == eb {
                edges.push(TemporalEdge::new(va, vb, 1)?);
            }
        }
    }
    for &(_, j, v) in &incidences {
        edges.push(TemporalEdge::new(v, set_vertices[j], 2)?);
    }
    let names = std::iter::once("x".to_string())
        .chain(incidences.iter().map(|&(e, j, _)| format!("e{e}S{j}")))
        .chain((0..hs.m()).map(|j| format!("S{j}")))
        .collect();
    let base = TemporalGraph::new(first_set + hs.m(), edges)?
        .with_lifespan(2)?
        .with_names(names)?;
    let gadget = HittingSetGadget {
        x: 0,
        incidences,
        set_vertices,
    };
    let candidates = match mode {
        CandidateMode::Simple => gadget
            .incidences
            .iter()
            .map(|&(_, _, v)| TemporalEdge::new(gadget.x, v, 1))
            .collect::<Result<Vec<_>>>()?,
        CandidateMode::Unrestricted => unrestricted_candidates(&base),
    };
    let problem = AugmentationProblem::new(base, candidates, Requirement::Source(gadget.x))?
        .with_semantics(Semantics::NonStrict)
        .with_budget(Some(hs.k));
    Ok((problem, gadget))
}

/// Backward map from any valid augmentation to a hitting set of at most
/// `|f|` elements.
///
/// Take the time-1 component of `x` after augmentation: each element clique
/// or set vertex in it was pulled in by a distinct added time-1 edge and
/// yields one element. Sets whose star is still unhit can only be reached
/// through added time-2 edges, at most one new star per edge; each of those
/// contributes its smallest element.
pub fn hitting_set_from_connecting_set(
    problem: &AugmentationProblem,
    gadget: &HittingSetGadget,
    f: &[TemporalEdge],
) -> Result<Vec<usize>> {
    if !verify_solution(problem, f)? {
        return Err(Error::contract("edge set does not make x a source"));
    }
    let g = problem.base().augment(f)?;
    let n = g.n();
    let mut time1 = Dsu::new(n);
    for e in g.edges_at(1) {
        time1.union(e.u(), e.v());
    }
    let root = time1.find(gadget.x);
    let set_index = |v: VertexId| gadget.set_vertices.iter().position(|&s| s == v);
    let sets: Vec<Vec<usize>> = {
        let mut sets = vec![Vec::new(); gadget.set_vertices.len()];
        for &(e, j, _) in &gadget.incidences {
            sets[j].push(e);
        }
        sets
    };
    let mut hit = Vec::new();
    for v in 0..n {
        if v == gadget.x || time1.find(v) != root {
            continue;
        }
        if let Some(j) = set_index(v) {
            hit.push(sets[j][0]);
        } else if let Some(&(e, _, _)) = gadget.incidences.iter().find(|&&(_, _, w)| w == v) {
            hit.push(e);
        }
    }
    hit.sort_unstable();
    hit.dedup();
    for s in &sets {
        if !s.iter().any(|e| hit.binary_search(e).is_ok()) {
            hit.push(s[0]);
        }
    }
    hit.sort_unstable();
    hit.dedup();
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augmentation::solve_exact;

    #[test]
    fn vertex_count_and_layout() {
        let hs = SetSystemInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![2]], 2).unwrap();
        let (p, g) = reduce_hitting_set(&hs, CandidateMode::Simple).unwrap();
        assert_eq!(p.base().n(), 1 + 5 + 3);
        assert_eq!(g.incidence_vertex(1, 0), Some(2));
        assert_eq!(g.incidence_vertex(0, 1), None);
        assert_eq!(p.base().name(g.set_vertices[2]), Some("S2"));
        assert_eq!(p.candidates().len(), 5);
    }

    #[test]
    fn forced_single_element() {
        let hs = SetSystemInstance::new(1, vec![vec![0]], 1).unwrap();
        let (p, g) = reduce_hitting_set(&hs, CandidateMode::Simple).unwrap();
        assert_eq!(solve_exact(&p).unwrap().cost(), Some(1));
        let f = g.connecting_set_from_hitting_set(&[0]).unwrap();
        assert!(verify_solution(&p, &f).unwrap());
    }

    #[test]
    fn two_singletons_need_two() {
        let hs = SetSystemInstance::new(2, vec![vec![0], vec![1]], 1).unwrap();
        let (p, _) = reduce_hitting_set(&hs, CandidateMode::Unrestricted).unwrap();
        assert!(!solve_exact(&p).unwrap().is_feasible_within_budget());
        assert_eq!(solve_exact(&p.with_budget(None)).unwrap().cost(), Some(2));
    }

    #[test]
    fn empty_set_rejected() {
        let hs = SetSystemInstance::new(2, vec![vec![0], vec![]], 1).unwrap();
        assert!(reduce_hitting_set(&hs, CandidateMode::Simple).is_err());
    }

    #[test]
    fn backward_handles_time_two_shortcuts() {
        // S0 = {0}, S1 = {1}: reach S1 from S0 by an added time-2 edge
        let hs = SetSystemInstance::new(2, vec![vec![0], vec![1]], 2).unwrap();
        let (p, g) = reduce_hitting_set(&hs, CandidateMode::Unrestricted).unwrap();
        let mut f = vec![
            TemporalEdge::new(g.x, g.incidence_vertex(0, 0).unwrap(), 1).unwrap(),
            TemporalEdge::new(g.set_vertices[0], g.set_vertices[1], 2).unwrap(),
        ];
        f.sort_unstable();
        assert!(verify_solution(&p, &f).unwrap());
        let h = hitting_set_from_connecting_set(&p, &g, &f).unwrap();
        assert_eq!(h, vec![0, 1]);
    }
}
