//! Augmentation problems: full connectivity, single source, pair demands.

mod exact;
mod special;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use exact::{solve_exact, solve_exact_parallel};
pub use special::{component_count_bound_check, solve_one_plus_one, spanner_via_tca};

use crate::dsu::component_labels;
use crate::error::{Error, Result};
use crate::temporal_graph::{Journey, Semantics, TemporalEdge, TemporalGraph, Time, VertexId};

/// Ordered connectivity demands with the number that must be met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDemands {
    pairs: Vec<(VertexId, VertexId)>,
    demand: usize,
}

impl PairDemands {
    /// All pairs must be satisfied. Repeated pairs name the same demand and
    /// are merged.
    pub fn all(pairs: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let pairs = dedup_pairs(pairs);
        let demand = pairs.len();
        PairDemands::at_least(pairs, demand)
    }

    /// At least `demand` of the distinct pairs must be satisfied.
    pub fn at_least(pairs: Vec<(VertexId, VertexId)>, demand: usize) -> Result<Self> {
        let pairs = dedup_pairs(pairs);
        if pairs.is_empty() {
            return Err(Error::contract("pair demand list is empty"));
        }
        if demand > pairs.len() {
            return Err(Error::contract(format!(
                "demand {demand} exceeds the {} distinct pairs",
                pairs.len()
            )));
        }
        Ok(PairDemands { pairs, demand })
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn demand(&self) -> usize {
        self.demand
    }
}

fn dedup_pairs(pairs: Vec<(VertexId, VertexId)>) -> Vec<(VertexId, VertexId)> {
    let mut seen = BTreeSet::new();
    pairs.into_iter().filter(|p| seen.insert(*p)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Requirement {
    /// Temporal connectivity.
    All,
    /// The vertex reaches every vertex.
    Source(VertexId),
    Pairs(PairDemands),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum CostModel {
    /// Each added temporal edge costs 1.
    #[default]
    #[serde(rename = "edge")]
    PerTemporalEdge,
    /// All candidate copies of one endpoint pair are added together at cost 1.
    #[serde(rename = "group")]
    EdgeByEdge,
}

impl std::fmt::Display for CostModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CostModel::PerTemporalEdge => f.write_str("edge"),
            CostModel::EdgeByEdge => f.write_str("group"),
        }
    }
}

impl CostModel {
    /// Cost of adding `edges` under this model.
    pub fn cost_of(&self, edges: &[TemporalEdge]) -> usize {
        match self {
            CostModel::PerTemporalEdge => edges.len(),
            CostModel::EdgeByEdge => edges
                .iter()
                .map(TemporalEdge::endpoints)
                .collect::<BTreeSet<_>>()
                .len(),
        }
    }
}

/// An augmentation instance. Candidates are disjoint from the base graph and
/// kept in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationProblem {
    base: TemporalGraph,
    candidates: Vec<TemporalEdge>,
    requirement: Requirement,
    semantics: Semantics,
    cost_model: CostModel,
    budget: Option<usize>,
}

impl AugmentationProblem {
    /// Validates candidates and requirement. The base lifespan is raised to
    /// cover the latest candidate if needed. Defaults: non-strict, per-edge
    /// cost, no budget.
    pub fn new(
        base: TemporalGraph,
        candidates: Vec<TemporalEdge>,
        requirement: Requirement,
    ) -> Result<Self> {
        let n = base.n();
        let mut candidates = candidates;
        candidates.sort_unstable();
        if let Some(w) = candidates.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        for e in &candidates {
            if e.v() >= n {
                return Err(Error::VertexOutOfRange { v: e.v(), n });
            }
            if base.contains(e) {
                return Err(Error::InvalidCandidate {
                    edge: *e,
                    reason: "already present in the base graph",
                });
            }
        }
        let check = |v: VertexId| {
            if v >= n {
                Err(Error::VertexOutOfRange { v, n })
            } else {
                Ok(())
            }
        };
        match &requirement {
            Requirement::All => {}
            Requirement::Source(s) => check(*s)?,
            Requirement::Pairs(p) => {
                for &(a, b) in p.pairs() {
                    check(a)?;
                    check(b)?;
                }
            }
        }
        let latest = candidates.iter().map(TemporalEdge::t).max().unwrap_or(0);
        let base = if latest > base.lifespan() {
            base.with_lifespan(latest)?
        } else {
            base
        };
        Ok(AugmentationProblem {
            base,
            candidates,
            requirement,
            semantics: Semantics::NonStrict,
            cost_model: CostModel::PerTemporalEdge,
            budget: None,
        })
    }

    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn with_cost_model(mut self, cost_model: CostModel) -> Self {
        self.cost_model = cost_model;
        self
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn base(&self) -> &TemporalGraph {
        &self.base
    }

    pub fn candidates(&self) -> &[TemporalEdge] {
        &self.candidates
    }

    pub fn requirement(&self) -> &Requirement {
        &self.requirement
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn cost_model(&self) -> CostModel {
        self.cost_model
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget
    }

    pub fn lifespan(&self) -> Time {
        self.base.lifespan()
    }

    fn check_subset(&self, f: &[TemporalEdge]) -> Result<()> {
        for e in f {
            if self.candidates.binary_search(e).is_err() {
                return Err(Error::InvalidCandidate {
                    edge: *e,
                    reason: "not in the candidate set",
                });
            }
        }
        Ok(())
    }

    /// Cost of `f` under the problem's cost model.
    pub fn cost_of(&self, f: &[TemporalEdge]) -> usize {
        self.cost_model.cost_of(f)
    }

    /// Ordered pairs whose reachability the requirement asks about.
    pub fn demanded_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let n = self.base.n();
        match &self.requirement {
            Requirement::All => (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect(),
            Requirement::Source(s) => (0..n).filter(|&v| v != *s).map(|v| (*s, v)).collect(),
            Requirement::Pairs(p) => p.pairs().to_vec(),
        }
    }
}

/// `f` is a subset of the candidates and the augmented graph meets the
/// requirement.
pub fn verify_solution(problem: &AugmentationProblem, f: &[TemporalEdge]) -> Result<bool> {
    problem.check_subset(f)?;
    let checker = Checker::new(problem);
    Ok(checker.satisfied(f.iter()))
}

/// Every temporal edge over `V × [1..T]` missing from `g`.
pub fn unrestricted_candidates(g: &TemporalGraph) -> Vec<TemporalEdge> {
    unrestricted_candidates_up_to(g, g.lifespan())
}

/// Missing temporal edges over `V × [1..lifespan]`.
pub fn unrestricted_candidates_up_to(g: &TemporalGraph, lifespan: Time) -> Vec<TemporalEdge> {
    let n = g.n();
    let mut out = Vec::new();
    for t in 1..=lifespan {
        for u in 0..n {
            for v in u + 1..n {
                let e = TemporalEdge::new(u, v, t).expect("distinct endpoints, positive time");
                if !g.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

/// A feasible selection with its cost and one journey per satisfied demand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub selected: Vec<TemporalEdge>,
    pub cost: usize,
    pub certificate: Vec<Journey>,
}

impl Solution {
    /// Builds the solution and its certificate from a verified selection.
    pub fn certify(problem: &AugmentationProblem, selected: Vec<TemporalEdge>) -> Result<Self> {
        if !verify_solution(problem, &selected)? {
            return Err(Error::contract("selection does not satisfy the requirement"));
        }
        let g = problem.base().augment(&selected)?;
        let mut certificate = Vec::new();
        for (u, v) in problem.demanded_pairs() {
            if let Some(j) = g.find_journey(u, v, problem.semantics())? {
                certificate.push(j);
            }
        }
        let cost = problem.cost_of(&selected);
        Ok(Solution {
            selected,
            cost,
            certificate,
        })
    }
}

/// Result of an optimization run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Solved(Solution),
    /// Even the whole candidate set fails the requirement.
    Infeasible,
    /// Feasible, but every solution costs more than the budget.
    OverBudget { budget: usize },
}

impl Outcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Solved(s) => Some(s),
            _ => None,
        }
    }

    pub fn cost(&self) -> Option<usize> {
        self.solution().map(|s| s.cost)
    }

    pub fn is_feasible_within_budget(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }
}

/// Requirement test for `base ↑ extra`, specialised to avoid rebuilding a
/// graph per query.
pub(crate) struct Checker {
    n: usize,
    lifespan: Time,
    semantics: Semantics,
    base_by_time: Vec<Vec<(VertexId, VertexId)>>,
    sources: Vec<VertexId>,
    /// (source index, target) for pair demands
    targets: Vec<(usize, VertexId)>,
    demand: usize,
    mode: CheckMode,
}

enum CheckMode {
    All,
    Source,
    Pairs,
}

impl Checker {
    pub fn new(problem: &AugmentationProblem) -> Self {
        let base = problem.base();
        let lifespan = base.lifespan();
        let mut base_by_time = vec![Vec::new(); lifespan as usize + 1];
        for e in base.edges() {
            base_by_time[e.t() as usize].push(e.endpoints());
        }
        let (mode, sources, targets, demand) = match problem.requirement() {
            Requirement::All => (CheckMode::All, Vec::new(), Vec::new(), 0),
            Requirement::Source(s) => (CheckMode::Source, vec![*s], Vec::new(), 0),
            Requirement::Pairs(p) => {
                let mut sources: Vec<VertexId> = p.pairs().iter().map(|&(a, _)| a).collect();
                sources.sort_unstable();
                sources.dedup();
                let targets = p
                    .pairs()
                    .iter()
                    .map(|&(a, b)| (sources.binary_search(&a).expect("source listed"), b))
                    .collect();
                (CheckMode::Pairs, sources, targets, p.demand())
            }
        };
        Checker {
            n: base.n(),
            lifespan,
            semantics: problem.semantics(),
            base_by_time,
            sources,
            targets,
            demand,
            mode,
        }
    }

    fn layers<'a, I>(&self, extra: I) -> Vec<Vec<(VertexId, VertexId)>>
    where
        I: IntoIterator<Item = &'a TemporalEdge>,
    {
        let mut layers = self.base_by_time.clone();
        for e in extra {
            let t = e.t() as usize;
            if t >= layers.len() {
                layers.resize(t + 1, Vec::new());
            }
            layers[t].push(e.endpoints());
        }
        layers
    }

    pub fn satisfied<'a, I>(&self, extra: I) -> bool
    where
        I: IntoIterator<Item = &'a TemporalEdge>,
    {
        let layers = self.layers(extra);
        let labels: Vec<(Vec<usize>, usize)> = match self.semantics {
            Semantics::NonStrict => layers
                .iter()
                .map(|l| component_labels(self.n, l.iter().copied()))
                .collect(),
            Semantics::Strict => Vec::new(),
        };
        let reach = |s: VertexId| -> Vec<bool> {
            let mut reached = vec![false; self.n];
            reached[s] = true;
            for (t, layer) in layers.iter().enumerate() {
                if layer.is_empty() {
                    continue;
                }
                match self.semantics {
                    Semantics::NonStrict => {
                        let (ref lab, k) = labels[t];
                        let mut hit = vec![false; k];
                        for v in 0..self.n {
                            if reached[v] {
                                hit[lab[v]] = true;
                            }
                        }
                        for v in 0..self.n {
                            if hit[lab[v]] {
                                reached[v] = true;
                            }
                        }
                    }
                    Semantics::Strict => {
                        let mut fresh = Vec::new();
                        for &(a, b) in layer {
                            if reached[a] && !reached[b] {
                                fresh.push(b);
                            } else if reached[b] && !reached[a] {
                                fresh.push(a);
                            }
                        }
                        for v in fresh {
                            reached[v] = true;
                        }
                    }
                }
            }
            reached
        };
        match self.mode {
            CheckMode::All => (0..self.n).all(|s| reach(s).into_iter().all(|r| r)),
            CheckMode::Source => reach(self.sources[0]).into_iter().all(|r| r),
            CheckMode::Pairs => {
                let masks: Vec<Vec<bool>> = self.sources.iter().map(|&s| reach(s)).collect();
                let met = self.targets.iter().filter(|&&(si, b)| masks[si][b]).count();
                met >= self.demand
            }
        }
    }

    /// Non-strict component labels of the base graph at `t`.
    pub fn base_labels(&self, t: Time) -> (Vec<usize>, usize) {
        let layer = self.base_by_time.get(t as usize).map(Vec::as_slice).unwrap_or(&[]);
        component_labels(self.n, layer.iter().copied())
    }

    pub fn lifespan(&self) -> Time {
        self.lifespan
    }
}
