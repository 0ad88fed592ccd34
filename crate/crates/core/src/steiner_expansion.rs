//! Temporal expansion into a directed weighted static graph.
//!
//! Every vertex gets copies `v@1 ..= v@(T+1)` linked by zero-weight waiting
//! arcs. A temporal edge `e = ({u,v},t)` becomes a gate: both `u@t` and
//! `v@t` enter `e.in`, the arc `e.in → e.out` carries the weight of `e`, and
//! `e.out` leaves to `u@(t+1)` and `v@(t+1)`. In the non-strict expansion,
//! gates of same-time edges sharing an endpoint are chained both ways so a
//! journey can take several hops within one time step.
//!
//! A pair `(u, v)` of the temporal graph maps to `(u@1, v@(T+1))`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augmentation::{AugmentationProblem, CostModel, Outcome, PairDemands, Requirement, Solution};
use crate::error::{Error, Result};
use crate::temporal_graph::{Hop, Journey, Semantics, TemporalEdge, TemporalGraph, Time, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionNode {
    Copy { v: VertexId, t: Time },
    GateIn(TemporalEdge),
    GateOut(TemporalEdge),
}

impl ExpansionNode {
    /// Time coordinate; never decreases along an arc.
    pub fn time(&self) -> Time {
        match self {
            ExpansionNode::Copy { t, .. } => *t,
            ExpansionNode::GateIn(e) | ExpansionNode::GateOut(e) => e.t(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ExpansionNode::Copy { v, t } => format!("{v}@{t}"),
            ExpansionNode::GateIn(e) => format!("{}-{}@{}.in", e.u(), e.v(), e.t()),
            ExpansionNode::GateOut(e) => format!("{}-{}@{}.out", e.u(), e.v(), e.t()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcKind {
    #[serde(rename = "wait")]
    Wait,
    #[serde(rename = "enter")]
    Enter,
    #[serde(rename = "gate")]
    Gate,
    #[serde(rename = "leave")]
    Leave,
    #[serde(rename = "gray")]
    Gray,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
    pub kind: ArcKind,
}

/// A temporal graph with integer edge weights and pair demands: find a
/// minimum-weight subgraph meeting at least `demands.demand()` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TgSteinerInstance {
    pub graph: TemporalGraph,
    /// Parallel to `graph.edges()`.
    pub weights: Vec<u64>,
    pub demands: PairDemands,
    /// Upper bound on the total weight, if any.
    pub budget: Option<u64>,
}

impl TgSteinerInstance {
    pub fn new(
        graph: TemporalGraph,
        weights: Vec<u64>,
        demands: PairDemands,
        budget: Option<u64>,
    ) -> Result<Self> {
        if weights.len() != graph.num_edges() {
            return Err(Error::contract(format!(
                "{} weights for {} temporal edges",
                weights.len(),
                graph.num_edges()
            )));
        }
        for &(a, b) in demands.pairs() {
            for v in [a, b] {
                if v >= graph.n() {
                    return Err(Error::VertexOutOfRange { v, n: graph.n() });
                }
            }
        }
        Ok(TgSteinerInstance {
            graph,
            weights,
            demands,
            budget,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionGraph {
    n: usize,
    lifespan: Time,
    semantics: Semantics,
    edges: Vec<TemporalEdge>,
    nodes: Vec<ExpansionNode>,
    arcs: Vec<Arc>,
    /// outgoing arc indices per node
    out: Vec<Vec<usize>>,
}

impl ExpansionGraph {
    /// Expansion of `g` with per-edge `weights` (parallel to `g.edges()`).
    pub fn build(g: &TemporalGraph, weights: &[u64], semantics: Semantics) -> Result<Self> {
        if weights.len() != g.num_edges() {
            return Err(Error::contract("one weight per temporal edge is required"));
        }
        let (n, lifespan) = (g.n(), g.lifespan());
        let layers = lifespan as usize + 1;
        let mut nodes = Vec::with_capacity(n * layers + 2 * g.num_edges());
        for v in 0..n {
            for t in 1..=layers as Time {
                nodes.push(ExpansionNode::Copy { v, t });
            }
        }
        for e in g.edges() {
            nodes.push(ExpansionNode::GateIn(*e));
            nodes.push(ExpansionNode::GateOut(*e));
        }
        let copy = |v: VertexId, t: Time| v * layers + (t as usize - 1);
        let gate_in = |k: usize| n * layers + 2 * k;
        let mut arcs = Vec::new();
        let mut arc = |from, to, weight, kind| arcs.push(Arc { from, to, weight, kind });
        for v in 0..n {
            for t in 1..=lifespan {
                arc(copy(v, t), copy(v, t + 1), 0, ArcKind::Wait);
            }
        }
        for (k, (e, &w)) in g.edges().iter().zip(weights).enumerate() {
            let (i, o, t) = (gate_in(k), gate_in(k) + 1, e.t());
            arc(copy(e.u(), t), i, 0, ArcKind::Enter);
            arc(copy(e.v(), t), i, 0, ArcKind::Enter);
            arc(i, o, w, ArcKind::Gate);
            arc(o, copy(e.u(), t + 1), 0, ArcKind::Leave);
            arc(o, copy(e.v(), t + 1), 0, ArcKind::Leave);
        }
        if semantics == Semantics::NonStrict {
            let edges = g.edges();
            for a in 0..edges.len() {
                for b in a + 1..edges.len() {
                    if edges[b].t() != edges[a].t() {
                        break;
                    }
                    let (x, y) = (edges[a], edges[b]);
                    if x.touches(y.u()) || x.touches(y.v()) {
                        arc(gate_in(a) + 1, gate_in(b), 0, ArcKind::Gray);
                        arc(gate_in(b) + 1, gate_in(a), 0, ArcKind::Gray);
                    }
                }
            }
        }
        let mut out = vec![Vec::new(); nodes.len()];
        for (idx, a) in arcs.iter().enumerate() {
            out[a.from].push(idx);
        }
        Ok(ExpansionGraph {
            n,
            lifespan,
            semantics,
            edges: g.edges().to_vec(),
            nodes,
            arcs,
            out,
        })
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn lifespan(&self) -> Time {
        self.lifespan
    }

    pub fn nodes(&self) -> &[ExpansionNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn num_gray_arcs(&self) -> usize {
        self.arcs.iter().filter(|a| a.kind == ArcKind::Gray).count()
    }

    /// Temporal edges in gate order.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    fn layers(&self) -> usize {
        self.lifespan as usize + 1
    }

    pub fn copy_node(&self, v: VertexId, t: Time) -> Option<usize> {
        (v < self.n && t >= 1 && t as usize <= self.layers()).then(|| v * self.layers() + t as usize - 1)
    }

    /// `(GateIn, GateOut)` node indices of the `k`-th temporal edge.
    pub fn gate_nodes(&self, k: usize) -> (usize, usize) {
        let base = self.n * self.layers() + 2 * k;
        (base, base + 1)
    }

    fn gate_index(&self, node: usize) -> Option<usize> {
        let first = self.n * self.layers();
        (node >= first).then(|| (node - first) / 2)
    }

    /// `(u@1, v@(T+1))`.
    pub fn terminals(&self, u: VertexId, v: VertexId) -> Result<(usize, usize)> {
        let s = self.copy_node(u, 1).ok_or(Error::VertexOutOfRange { v: u, n: self.n })?;
        let t = self
            .copy_node(v, self.lifespan + 1)
            .ok_or(Error::VertexOutOfRange { v, n: self.n })?;
        Ok((s, t))
    }

    fn arc_between(&self, from: usize, to: usize) -> Option<&Arc> {
        self.out.get(from)?.iter().map(|&i| &self.arcs[i]).find(|a| a.to == to)
    }

    /// Nodes reachable from `source` using zero-weight arcs and the arcs
    /// flagged in `open`.
    pub fn reachable(&self, source: usize, open: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &ai in &self.out[x] {
                let a = &self.arcs[ai];
                if (a.weight == 0 || open[ai]) && !seen[a.to] {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    /// Maps a journey of the expanded graph to a node path from
    /// `start@1` to `end@(T+1)`. Closed sub-walks are removed first.
    /// Same-time consecutive hops pass through gray arcs.
    pub fn path_from_journey(&self, journey: &Journey) -> Result<Vec<usize>> {
        if journey.semantics != self.semantics {
            return Err(Error::contract(format!(
                "journey is {} but the expansion is {}",
                journey.semantics, self.semantics
            )));
        }
        let g = TemporalGraph::new(self.n, self.edges.iter().copied())?
            .with_lifespan(self.lifespan)?;
        if !journey.is_valid_in(&g) {
            return Err(Error::contract("journey is not valid in the expanded graph"));
        }
        let j = journey.without_loops();
        let mut path = Vec::new();
        let mut at = j.start;
        let mut layer: Time = 1;
        let mut i = 0;
        while i < j.hops.len() {
            let t = j.hops[i].t;
            for s in layer..=t {
                path.push(self.copy_node(at, s).expect("time within lifespan"));
            }
            // a run of same-time hops is chained through gray arcs
            while i < j.hops.len() && j.hops[i].t == t {
                let e = j.hops[i].edge()?;
                let k = self.edges.binary_search(&e).expect("edge of the graph");
                let (gin, gout) = self.gate_nodes(k);
                path.extend([gin, gout]);
                at = j.hops[i].to;
                i += 1;
            }
            layer = t + 1;
        }
        for s in layer..=self.lifespan + 1 {
            path.push(self.copy_node(at, s).expect("time within lifespan"));
        }
        debug_assert!(self.is_path(&path));
        Ok(path)
    }

    /// True iff consecutive nodes are joined by arcs.
    pub fn is_path(&self, path: &[usize]) -> bool {
        !path.is_empty()
            && path.iter().all(|&x| x < self.nodes.len())
            && path.windows(2).all(|w| self.arc_between(w[0], w[1]).is_some())
    }

    /// Maps a path between two copy nodes back to a journey. Within a run
    /// of gates at one time step, the hops follow the shortest route from
    /// the entry vertex to the exit vertex over the run's edges; a gate
    /// left through the vertex it was entered from acts as waiting.
    pub fn journey_from_path(&self, path: &[usize]) -> Result<Journey> {
        if !self.is_path(path) {
            return Err(Error::contract("node sequence is not a path of the expansion"));
        }
        let ExpansionNode::Copy { v: start, .. } = self.nodes[path[0]] else {
            return Err(Error::contract("path must start at a vertex copy"));
        };
        if !matches!(self.nodes[*path.last().expect("nonempty")], ExpansionNode::Copy { .. }) {
            return Err(Error::contract("path must end at a vertex copy"));
        }
        let mut hops = Vec::new();
        let mut cur = start;
        let mut run: Vec<TemporalEdge> = Vec::new();
        for &x in path {
            match self.nodes[x] {
                ExpansionNode::Copy { v, .. } => {
                    if !run.is_empty() {
                        hops.extend(route(cur, v, &run));
                        run.clear();
                    }
                    cur = v;
                }
                ExpansionNode::GateIn(e) => run.push(e),
                ExpansionNode::GateOut(_) => {}
            }
        }
        Ok(Journey {
            start,
            hops,
            semantics: self.semantics,
        })
    }

    /// Node labels and arcs, for external tools.
    pub fn to_json(&self) -> ExpansionJson {
        ExpansionJson {
            schema: crate::SCHEMA_VERSION,
            semantics: self.semantics,
            nodes: self.nodes.iter().map(ExpansionNode::label).collect(),
            arcs: self
                .arcs
                .iter()
                .map(|a| ArcJson {
                    from: a.from,
                    to: a.to,
                    weight: a.weight,
                })
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        self.to_json().to_dot()
    }
}

/// Hops from `from` to `to` over `edges`, all at one time step, by BFS.
fn route(from: VertexId, to: VertexId, edges: &[TemporalEdge]) -> Vec<Hop> {
    if from == to {
        return Vec::new();
    }
    let mut pred: std::collections::HashMap<VertexId, Hop> = std::collections::HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for e in edges {
            let Some(y) = e.other(x) else { continue };
            if y != from && !pred.contains_key(&y) {
                pred.insert(y, Hop { from: x, to: y, t: e.t() });
                queue.push_back(y);
            }
        }
    }
    let mut hops = Vec::new();
    let mut at = to;
    while at != from {
        let h = pred[&at];
        hops.push(h);
        at = h.from;
    }
    hops.reverse();
    hops
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
}

/// JSON adjacency form of an expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub schema: u32,
    pub semantics: Semantics,
    pub nodes: Vec<String>,
    pub arcs: Vec<ArcJson>,
}

impl ExpansionJson {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "// expansion: semantics={} nodes={} arcs={}",
            self.semantics,
            self.nodes.len(),
            self.arcs.len()
        );
        out.push_str("digraph expansion {\n");
        for (i, label) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for a in &self.arcs {
            let _ = writeln!(out, "  n{} -> n{} [weight={}];", a.from, a.to, a.weight);
        }
        out.push_str("}\n");
        out
    }

    /// Reads back the DOT produced by [`ExpansionJson::to_dot`].
    pub fn from_dot(text: &str) -> Result<Self> {
        let mut semantics = None;
        let mut nodes: Vec<(usize, String)> = Vec::new();
        let mut arcs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if let Some(header) = body.strip_prefix("// expansion:") {
                for field in header.split_whitespace() {
                    if let Some(s) = field.strip_prefix("semantics=") {
                        semantics = Some(s.parse::<Semantics>().map_err(|e| Error::parse(line, e))?);
                    }
                }
                continue;
            }
            if body.is_empty() || body.starts_with("//") || body.starts_with("digraph") || body == "}" {
                continue;
            }
            let node_id = |s: &str| -> Result<usize> {
                s.trim()
                    .strip_prefix('n')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| Error::parse(line, format!("bad node id `{s}`")))
            };
            let attr = |s: &str, key: &str| -> Result<String> {
                let open = s.find('[').ok_or_else(|| Error::parse(line, "missing attributes"))?;
                let inner = s[open + 1..].trim_end_matches(';').trim_end_matches(']');
                let value = inner
                    .trim()
                    .strip_prefix(key)
                    .and_then(|r| r.strip_prefix('='))
                    .ok_or_else(|| Error::parse(line, format!("missing `{key}`")))?;
                Ok(value.trim_matches('"').to_string())
            };
            if let Some((lhs, rhs)) = body.split_once("->") {
                let to_end = rhs.find('[').unwrap_or(rhs.len());
                let weight = attr(rhs, "weight")?
                    .parse()
                    .map_err(|_| Error::parse(line, "weight must be a non-negative integer"))?;
                arcs.push(ArcJson {
                    from: node_id(lhs)?,
                    to: node_id(&rhs[..to_end])?,
                    weight,
                });
            } else {
                let id_end = body.find('[').ok_or_else(|| Error::parse(line, "expected a node or arc"))?;
                nodes.push((node_id(&body[..id_end])?, attr(body, "label")?));
            }
        }
        nodes.sort_by_key(|x| x.0);
        if nodes.iter().enumerate().any(|(i, (id, _))| i != *id) {
            return Err(Error::parse(0, "node ids must be n0..n{k-1}"));
        }
        let semantics = semantics.ok_or_else(|| Error::parse(1, "missing `// expansion:` header"))?;
        Ok(ExpansionJson {
            schema: crate::SCHEMA_VERSION,
            semantics,
            nodes: nodes.into_iter().map(|x| x.1).collect(),
            arcs,
        })
    }
}

/// Expansion of a TG-Steiner instance plus its demanded node pairs.
pub fn build_expansion(
    inst: &TgSteinerInstance,
    semantics: Semantics,
) -> Result<(ExpansionGraph, Vec<(usize, usize)>)> {
    let exp = ExpansionGraph::build(&inst.graph, &inst.weights, semantics)?;
    let pairs = inst
        .demands
        .pairs()
        .iter()
        .map(|&(u, v)| exp.terminals(u, v))
        .collect::<Result<Vec<_>>>()?;
    Ok((exp, pairs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub weight: u64,
    /// Selected positive-weight arcs, ascending.
    pub arcs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectionOutcome {
    Connected(Connection),
    /// Fewer than `demand` pairs are connected even with every arc.
    Infeasible,
    OverBudget { budget: u64 },
}

struct ArcSearch<'a> {
    exp: &'a ExpansionGraph,
    pairs: &'a [(usize, usize)],
    demand: usize,
    /// positive-weight arc indices
    paid: Vec<usize>,
}

impl ArcSearch<'_> {
    fn satisfied(&self, chosen: &[usize], tail_from: usize) -> bool {
        let mut open = vec![false; self.exp.arcs.len()];
        for &i in chosen.iter().chain(&(tail_from..self.paid.len()).collect::<Vec<_>>()) {
            open[self.paid[i]] = true;
        }
        let mut met = 0;
        let mut cache: Vec<(usize, Vec<bool>)> = Vec::new();
        for &(s, t) in self.pairs {
            let pos = match cache.iter().position(|(src, _)| *src == s) {
                Some(p) => p,
                None => {
                    cache.push((s, self.exp.reachable(s, &open)));
                    cache.len() - 1
                }
            };
            if cache[pos].1[t] {
                met += 1;
            }
        }
        met >= self.demand
    }

    fn weight(&self, i: usize) -> u64 {
        self.exp.arcs[self.paid[i]].weight
    }

    /// Extends `chosen` to total weight exactly `target` with indices
    /// `>= start`.
    fn extend(&self, target: u64, have: u64, start: usize, chosen: &mut Vec<usize>, suffix: &[u64]) -> bool {
        if have == target {
            return self.satisfied(chosen, self.paid.len());
        }
        for i in start..self.paid.len() {
            if have + suffix[i] < target {
                break;
            }
            if !self.satisfied(chosen, i) {
                break;
            }
            let w = self.weight(i);
            if have + w > target {
                continue;
            }
            chosen.push(i);
            if self.extend(target, have + w, i + 1, chosen, suffix) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn connect(
    exp: &ExpansionGraph,
    pairs: &[(usize, usize)],
    demand: usize,
    budget: Option<u64>,
    parallel: bool,
) -> Result<ConnectionOutcome> {
    if demand > pairs.len() {
        return Err(Error::contract("demand exceeds the number of pairs"));
    }
    let paid: Vec<usize> = (0..exp.arcs.len()).filter(|&i| exp.arcs[i].weight > 0).collect();
    let search = ArcSearch {
        exp,
        pairs,
        demand,
        paid,
    };
    if !search.satisfied(&[], 0) {
        return Ok(ConnectionOutcome::Infeasible);
    }
    let k = search.paid.len();
    let mut suffix = vec![0u64; k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1] + search.weight(i);
    }
    let total = suffix[0];
    let cap = budget.map_or(total, |b| b.min(total));
    for target in 0..=cap {
        let found = if target == 0 {
            search.satisfied(&[], k).then(Vec::new)
        } else if parallel {
            (0..k).into_par_iter().find_map_first(|first| {
                let w = search.weight(first);
                if w > target || suffix[first] < target || !search.satisfied(&[], first) {
                    return None;
                }
                let mut chosen = vec![first];
                search.extend(target, w, first + 1, &mut chosen, &suffix).then_some(chosen)
            })
        } else {
            let mut chosen = Vec::new();
            search.extend(target, 0, 0, &mut chosen, &suffix).then_some(chosen)
        };
        if let Some(chosen) = found {
            let arcs = chosen.iter().map(|&i| search.paid[i]).collect();
            return Ok(ConnectionOutcome::Connected(Connection { weight: target, arcs }));
        }
    }
    Ok(ConnectionOutcome::OverBudget {
        budget: budget.unwrap_or(total),
    })
}

/// Exact minimum-weight arc selection connecting at least `demand` of the
/// node pairs. Zero-weight arcs are free; positive-weight arc subsets are
/// tried by increasing total weight, lexicographically within a weight.
pub fn min_weight_connection(
    exp: &ExpansionGraph,
    pairs: &[(usize, usize)],
    demand: usize,
    budget: Option<u64>,
) -> Result<ConnectionOutcome> {
    connect(exp, pairs, demand, budget, false)
}

/// Same result as [`min_weight_connection`], each weight class split
/// across the rayon pool.
pub fn min_weight_connection_parallel(
    exp: &ExpansionGraph,
    pairs: &[(usize, usize)],
    demand: usize,
    budget: Option<u64>,
) -> Result<ConnectionOutcome> {
    connect(exp, pairs, demand, budget, true)
}

/// Solves a pair-demand augmentation through the expansion of
/// `base ↑ candidates`, with weight 0 on base edges and 1 on candidates.
/// Only the per-edge cost model maps onto arc weights.
pub fn solve_tpca_via_expansion(p: &AugmentationProblem) -> Result<Outcome> {
    let Requirement::Pairs(demands) = p.requirement() else {
        return Err(Error::contract("the expansion engine needs a pair-demand requirement"));
    };
    if p.cost_model() != CostModel::PerTemporalEdge {
        return Err(Error::contract("the expansion engine supports the per-edge cost model only"));
    }
    let full = p.base().augment(p.candidates())?;
    let weights: Vec<u64> = full
        .edges()
        .iter()
        .map(|e| u64::from(!p.base().contains(e)))
        .collect();
    let inst = TgSteinerInstance::new(full, weights, demands.clone(), p.budget().map(|b| b as u64))?;
    let (exp, pairs) = build_expansion(&inst, p.semantics())?;
    match min_weight_connection(&exp, &pairs, demands.demand(), inst.budget)? {
        ConnectionOutcome::Infeasible => Ok(Outcome::Infeasible),
        ConnectionOutcome::OverBudget { budget } => Ok(Outcome::OverBudget { budget: budget as usize }),
        ConnectionOutcome::Connected(c) => {
            let mut selected: Vec<TemporalEdge> = c
                .arcs
                .iter()
                .map(|&a| {
                    let k = exp.gate_index(exp.arcs[a].from).expect("paid arcs are gate arcs");
                    exp.edges[k]
                })
                .collect();
            selected.sort_unstable();
            Ok(Outcome::Solved(Solution::certify(p, selected)?))
        }
    }
}
