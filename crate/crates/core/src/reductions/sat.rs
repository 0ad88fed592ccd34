use serde::{Deserialize, Serialize};

use crate::augmentation::{verify_solution, AugmentationProblem, CostModel, PairDemands, Requirement};
use crate::error::{Error, Result};
use crate::temporal_graph::{Semantics, TemporalEdge, TemporalGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// A 3-CNF formula over variables `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfInstance {
    pub n: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfInstance {
    /// Rejects out-of-range variables and clauses holding a variable with
    /// both polarities.
    pub fn new(n: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            for a in c {
                if a.var >= n {
                    return Err(Error::contract(format!("clause {j}: variable {} out of range", a.var)));
                }
                if c.iter().any(|b| b.var == a.var && b.positive != a.positive) {
                    return Err(Error::contract(format!(
                        "clause {j} contains variable {} with both polarities",
                        a.var
                    )));
                }
            }
        }
        Ok(CnfInstance { n, clauses })
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

/// One literal occurrence. Index 0 of `buffer`/`value` is the true branch
/// of the variable gadget, index 1 the false branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Occurrence {
    pub clause: usize,
    pub literal: Literal,
    pub buffer: [VertexId; 2],
    pub value: [VertexId; 2],
}

impl Occurrence {
    fn branch(&self) -> usize {
        usize::from(!self.literal.positive)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatGadget {
    pub var_start: Vec<VertexId>,
    pub var_end: Vec<VertexId>,
    pub clause_start: Vec<VertexId>,
    pub clause_end: Vec<VertexId>,
    /// Grouped by variable, then in clause order.
    pub occurrences: Vec<Occurrence>,
}

/// Builds the non-strict two-pair instance under edge-by-edge cost with
/// budget `3m`.
///
/// Each literal occurrence gets its own buffer/value pair in both branches
/// of its variable, joined by an optional link at times 1 and 2 (one
/// candidate group). Crossing a variable gadget at time 1 buys every link
/// of one branch, so the variable path alone costs the number of
/// occurrences, `3m`. The clause path runs at time 2 through a link of a
/// literal occurrence, so at cost exactly `3m` it can only use links of the
/// branches picked by the variable path: a satisfying assignment.
/// A variable without occurrences is crossed by a direct time-1 edge.
pub fn reduce_3sat(cnf: &CnfInstance) -> Result<(AugmentationProblem, SatGadget)> {
    let cnf = CnfInstance::new(cnf.n, cnf.clauses.clone())?;
    if cnf.n == 0 || cnf.m() == 0 {
        return Err(Error::contract("formula needs at least one variable and one clause"));
    }
    let mut names: Vec<String> = Vec::new();
    let mut fresh = |name: String| {
        names.push(name);
        names.len() - 1
    };
    let mut var_start = Vec::with_capacity(cnf.n);
    let mut var_end = Vec::with_capacity(cnf.n);
    let mut occurrences = Vec::new();
    for i in 0..cnf.n {
        var_start.push(fresh(format!("x{i}S")));
        for (j, clause) in cnf.clauses.iter().enumerate() {
            for (pos, lit) in clause.iter().enumerate() {
                if lit.var != i {
                    continue;
                }
                let tag = format!("x{i}C{j}L{pos}");
                let buffer = [fresh(format!("T_b_{tag}")), fresh(format!("F_b_{tag}"))];
                let value = [fresh(format!("T_v_{tag}")), fresh(format!("F_v_{tag}"))];
                occurrences.push(Occurrence {
                    clause: j,
                    literal: *lit,
                    buffer,
                    value,
                });
            }
        }
        var_end.push(fresh(format!("x{i}E")));
    }
    let mut clause_start = Vec::with_capacity(cnf.m());
    let mut clause_end = Vec::with_capacity(cnf.m());
    for j in 0..cnf.m() {
        clause_start.push(fresh(format!("C{j}S")));
        clause_end.push(fresh(format!("C{j}E")));
    }
    let gadget = SatGadget {
        var_start,
        var_end,
        clause_start,
        clause_end,
        occurrences,
    };

    let mut edges = Vec::new();
    for i in 0..cnf.n {
        let occ: Vec<&Occurrence> = gadget.occurrences.iter().filter(|o| o.literal.var == i).collect();
        let (s, e) = (gadget.var_start[i], gadget.var_end[i]);
        if occ.is_empty() {
            edges.push(TemporalEdge::new(s, e, 1)?);
        } else {
            for b in 0..2 {
                edges.push(TemporalEdge::new(s, occ[0].buffer[b], 1)?);
                for w in occ.windows(2) {
                    edges.push(TemporalEdge::new(w[0].value[b], w[1].buffer[b], 1)?);
                }
                edges.push(TemporalEdge::new(occ[occ.len() - 1].value[b], e, 1)?);
            }
        }
        if i + 1 < cnf.n {
            edges.push(TemporalEdge::new(e, gadget.var_start[i + 1], 1)?);
        }
    }
    for o in &gadget.occurrences {
        let b = o.branch();
        edges.push(TemporalEdge::new(gadget.clause_start[o.clause], o.buffer[b], 2)?);
        edges.push(TemporalEdge::new(o.value[b], gadget.clause_end[o.clause], 2)?);
    }
    for j in 0..cnf.m().saturating_sub(1) {
        edges.push(TemporalEdge::new(gadget.clause_end[j], gadget.clause_start[j + 1], 2)?);
    }
    let mut candidates = Vec::new();
    for o in &gadget.occurrences {
        for b in 0..2 {
            for t in [1, 2] {
                candidates.push(TemporalEdge::new(o.buffer[b], o.value[b], t)?);
            }
        }
    }
    let n_vertices = names.len();
    let base = TemporalGraph::new(n_vertices, edges)?
        .with_lifespan(2)?
        .with_names(names)?;
    let pairs = PairDemands::all(vec![
        (gadget.var_start[0], gadget.var_end[cnf.n - 1]),
        (gadget.clause_start[0], gadget.clause_end[cnf.m() - 1]),
    ])?;
    let problem = AugmentationProblem::new(base, candidates, Requirement::Pairs(pairs))?
        .with_semantics(Semantics::NonStrict)
        .with_cost_model(CostModel::EdgeByEdge)
        .with_budget(Some(3 * cnf.m()));
    Ok((problem, gadget))
}

impl SatGadget {
    /// Forward map: both temporal copies of every link on the branch the
    /// assignment picks. Costs exactly `3m` groups.
    pub fn connecting_set_from_assignment(&self, assignment: &[bool]) -> Result<Vec<TemporalEdge>> {
        if assignment.len() != self.var_start.len() {
            return Err(Error::contract(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.var_start.len()
            )));
        }
        let mut out = Vec::new();
        for o in &self.occurrences {
            let b = usize::from(!assignment[o.literal.var]);
            for t in [1, 2] {
                out.push(TemporalEdge::new(o.buffer[b], o.value[b], t)?);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Backward map: a variable is true iff every link of its true branch
    /// was bought. On a solution of cost `3m` exactly one branch per
    /// variable is complete and the assignment satisfies the formula.
    pub fn assignment_from_connecting_set(
        &self,
        problem: &AugmentationProblem,
        f: &[TemporalEdge],
    ) -> Result<Vec<bool>> {
        if !verify_solution(problem, f)? {
            return Err(Error::contract("edge set does not meet both demands"));
        }
        let bought = |o: &Occurrence, b: usize| {
            let pair = (o.buffer[b].min(o.value[b]), o.buffer[b].max(o.value[b]));
            f.iter().any(|e| e.endpoints() == pair)
        };
        Ok((0..self.var_start.len())
            .map(|i| {
                self.occurrences
                    .iter()
                    .filter(|o| o.literal.var == i)
                    .all(|o| bought(o, 0))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augmentation::solve_exact;

    #[test]
    fn single_clause_costs_three() {
        let cnf = CnfInstance::new(1, vec![[Literal::pos(0); 3]]).unwrap();
        let (p, g) = reduce_3sat(&cnf).unwrap();
        assert_eq!(p.budget(), Some(3));
        assert_eq!(p.cost_model(), CostModel::EdgeByEdge);
        // 2 + 4 per occurrence + 2 clause vertices
        assert_eq!(p.base().n(), 2 + 12 + 2);
        assert_eq!(CostModel::EdgeByEdge.cost_of(p.candidates()), 6);
        let s = solve_exact(&p).unwrap();
        assert_eq!(s.cost(), Some(3));
        let f = g.connecting_set_from_assignment(&[true]).unwrap();
        assert!(verify_solution(&p, &f).unwrap());
        assert_eq!(p.cost_of(&f), 3);
        assert_eq!(g.assignment_from_connecting_set(&p, &f).unwrap(), vec![true]);
        // the false branch crosses the variable gadget but misses the clause
        let wrong = g.connecting_set_from_assignment(&[false]).unwrap();
        assert!(!verify_solution(&p, &wrong).unwrap());
    }

    #[test]
    fn contradiction_exceeds_budget() {
        let cnf = CnfInstance::new(1, vec![[Literal::pos(0); 3], [Literal::neg(0); 3]]).unwrap();
        let (p, _) = reduce_3sat(&cnf).unwrap();
        assert!(!solve_exact(&p).unwrap().is_feasible_within_budget());
    }

    #[test]
    fn unused_variable_is_bridged() {
        let cnf = CnfInstance::new(2, vec![[Literal::neg(1); 3]]).unwrap();
        let (p, g) = reduce_3sat(&cnf).unwrap();
        assert!(p.base().contains(&TemporalEdge::new(g.var_start[0], g.var_end[0], 1).unwrap()));
        let f = g.connecting_set_from_assignment(&[true, false]).unwrap();
        assert!(verify_solution(&p, &f).unwrap());
    }

    #[test]
    fn mixed_polarity_rejected() {
        assert!(CnfInstance::new(2, vec![[Literal::pos(0), Literal::neg(0), Literal::pos(1)]]).is_err());
        assert!(CnfInstance::new(1, vec![[Literal::pos(1); 3]]).is_err());
    }
}
