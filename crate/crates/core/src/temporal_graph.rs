//! Temporal graph model, snapshots, journeys and reachability.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::component_labels;
use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Discrete time step, starting at 1.
pub type Time = u32;

/// Journey semantics: whether consecutive hops may share a time step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Semantics {
    #[serde(rename = "strict")]
    Strict,
    #[default]
    #[serde(rename = "nonstrict", alias = "non-strict")]
    NonStrict,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::Strict => f.write_str("strict"),
            Semantics::NonStrict => f.write_str("nonstrict"),
        }
    }
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "strict" => Ok(Semantics::Strict),
            "nonstrict" | "non-strict" => Ok(Semantics::NonStrict),
            other => Err(format!("unknown semantics `{other}`")),
        }
    }
}

/// An undirected edge present at one time step.
///
/// Endpoints are stored with `u < v`. The derived ordering is the canonical
/// one: by time, then smaller endpoint, then larger endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawEdge", into = "RawEdge")]
pub struct TemporalEdge {
    t: Time,
    u: VertexId,
    v: VertexId,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    u: VertexId,
    v: VertexId,
    t: Time,
}

impl TryFrom<RawEdge> for TemporalEdge {
    type Error = Error;

    fn try_from(raw: RawEdge) -> Result<Self> {
        TemporalEdge::new(raw.u, raw.v, raw.t)
    }
}

impl From<TemporalEdge> for RawEdge {
    fn from(e: TemporalEdge) -> Self {
        RawEdge {
            u: e.u,
            v: e.v,
            t: e.t,
        }
    }
}

impl TemporalEdge {
    pub fn new(a: VertexId, b: VertexId, t: Time) -> Result<Self> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if t == 0 {
            return Err(Error::ZeroTime);
        }
        Ok(TemporalEdge {
            t,
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn t(&self) -> Time {
        self.t
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for TemporalEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}@{}", self.u, self.v, self.t)
    }
}

/// One step of a journey: move from `from` to `to` over the edge at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hop {
    pub from: VertexId,
    pub to: VertexId,
    pub t: Time,
}

impl Hop {
    pub fn edge(&self) -> Result<TemporalEdge> {
        TemporalEdge::new(self.from, self.to, self.t)
    }
}

/// A temporal path. The empty journey at a vertex is represented by `start`
/// with no hops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Journey {
    pub start: VertexId,
    pub hops: Vec<Hop>,
    pub semantics: Semantics,
}

impl Journey {
    pub fn empty(start: VertexId, semantics: Semantics) -> Self {
        Journey {
            start,
            hops: Vec::new(),
            semantics,
        }
    }

    pub fn end(&self) -> VertexId {
        self.hops.last().map_or(self.start, |h| h.to)
    }

    /// Checks chaining, time monotonicity under the journey's semantics, and
    /// that every hop is a temporal edge of `g`.
    pub fn is_valid_in(&self, g: &TemporalGraph) -> bool {
        if self.start >= g.n() {
            return false;
        }
        let mut at = self.start;
        let mut last: Option<Time> = None;
        for hop in &self.hops {
            if hop.from != at {
                return false;
            }
            let Ok(edge) = hop.edge() else {
                return false;
            };
            if !g.contains(&edge) {
                return false;
            }
            if let Some(prev) = last {
                let ok = match self.semantics {
                    Semantics::NonStrict => prev <= hop.t,
                    Semantics::Strict => prev < hop.t,
                };
                if !ok {
                    return false;
                }
            }
            last = Some(hop.t);
            at = hop.to;
        }
        true
    }

    /// Drops closed sub-walks so that no vertex is visited twice. The result
    /// is still a journey under the same semantics.
    pub fn without_loops(&self) -> Journey {
        let mut vertices = vec![self.start];
        let mut hops: Vec<Hop> = Vec::with_capacity(self.hops.len());
        for hop in &self.hops {
            if let Some(pos) = vertices.iter().position(|&x| x == hop.to) {
                vertices.truncate(pos + 1);
                hops.truncate(pos);
            } else {
                vertices.push(hop.to);
                hops.push(*hop);
            }
        }
        Journey {
            start: self.start,
            hops,
            semantics: self.semantics,
        }
    }
}

/// Partition of the vertex set into the connected components of one snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotComponents {
    pub time: Time,
    /// Blocks sorted internally, ordered by smallest member.
    pub parts: Vec<Vec<VertexId>>,
}

impl SnapshotComponents {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.parts.iter().map(Vec::len).sum();
        let mut labels = vec![0; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                labels[v] = i;
            }
        }
        labels
    }
}

/// A temporal graph: `n` vertices and a set of temporal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    n: usize,
    /// Sorted canonically, no duplicates.
    edges: Vec<TemporalEdge>,
    lifespan_override: Option<Time>,
    names: Option<Vec<String>>,
}

impl TemporalGraph {
    /// Builds a graph, rejecting duplicate temporal edges and out-of-range
    /// endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = TemporalEdge>,
    {
        let mut edges: Vec<TemporalEdge> = edges.into_iter().collect();
        for e in &edges {
            if e.v >= n {
                return Err(Error::VertexOutOfRange { v: e.v, n });
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0]));
        }
        Ok(TemporalGraph {
            n,
            edges,
            lifespan_override: None,
            names: None,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        TemporalGraph {
            n,
            edges: Vec::new(),
            lifespan_override: None,
            names: None,
        }
    }

    /// Builds from `(u, v, t)` triples.
    pub fn from_triples<I>(n: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Time)>,
    {
        let edges = triples
            .into_iter()
            .map(|(u, v, t)| TemporalEdge::new(u, v, t))
            .collect::<Result<Vec<_>>>()?;
        TemporalGraph::new(n, edges)
    }

    /// Declares a lifespan beyond the latest edge time.
    pub fn with_lifespan(mut self, lifespan: Time) -> Result<Self> {
        let max = self.max_edge_time();
        if lifespan < max {
            return Err(Error::contract(format!(
                "declared lifespan {lifespan} is below the latest edge time {max}"
            )));
        }
        self.lifespan_override = (lifespan > max).then_some(lifespan);
        Ok(self)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::contract(format!(
                "{} names for {} vertices",
                names.len(),
                self.n
            )));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(Error::contract("vertex names must be unique"));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, v: VertexId) -> Option<&str> {
        self.names.as_ref().and_then(|n| n.get(v)).map(String::as_str)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn max_edge_time(&self) -> Time {
        self.edges.last().map_or(0, |e| e.t)
    }

    /// Latest time step: the declared lifespan if any, otherwise the latest
    /// edge time (0 for an edgeless graph).
    pub fn lifespan(&self) -> Time {
        self.lifespan_override.unwrap_or_else(|| self.max_edge_time())
    }

    pub fn declared_lifespan(&self) -> Option<Time> {
        self.lifespan_override
    }

    pub fn contains(&self, e: &TemporalEdge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// True iff every endpoint pair occurs at exactly one time step.
    pub fn is_simple(&self) -> bool {
        let pairs: BTreeSet<(VertexId, VertexId)> = self.edges.iter().map(|e| e.endpoints()).collect();
        pairs.len() == self.edges.len()
    }

    /// Temporal edges at time `t`, in canonical order.
    pub fn edges_at(&self, t: Time) -> &[TemporalEdge] {
        let lo = self.edges.partition_point(|e| e.t < t);
        let hi = self.edges.partition_point(|e| e.t <= t);
        &self.edges[lo..hi]
    }

    fn check_time(&self, t: Time) -> Result<()> {
        if t == 0 || t > self.lifespan() {
            return Err(Error::TimeOutOfRange {
                t,
                lifespan: self.lifespan(),
            });
        }
        Ok(())
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { v, n: self.n });
        }
        Ok(())
    }

    /// Endpoint pairs of the static graph at time `t`.
    pub fn snapshot(&self, t: Time) -> Result<Vec<(VertexId, VertexId)>> {
        self.check_time(t)?;
        Ok(self.edges_at(t).iter().map(|e| e.endpoints()).collect())
    }

    pub fn snapshot_components(&self, t: Time) -> Result<SnapshotComponents> {
        self.check_time(t)?;
        let (labels, k) = self.component_labels_at(t);
        let mut parts = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v);
        }
        Ok(SnapshotComponents { time: t, parts })
    }

    pub(crate) fn component_labels_at(&self, t: Time) -> (Vec<usize>, usize) {
        component_labels(self.n, self.edges_at(t).iter().map(|e| e.endpoints()))
    }

    /// Vertices reachable from `source` by a journey, in ascending order.
    /// Always contains `source`.
    pub fn reachable_set(&self, source: VertexId, semantics: Semantics) -> Result<Vec<VertexId>> {
        self.check_vertex(source)?;
        let reached = self.reach_mask(source, semantics);
        Ok((0..self.n).filter(|&v| reached[v]).collect())
    }

    pub(crate) fn reach_mask(&self, source: VertexId, semantics: Semantics) -> Vec<bool> {
        let mut reached = vec![false; self.n];
        reached[source] = true;
        let mut start = 0;
        while start < self.edges.len() {
            let t = self.edges[start].t;
            let end = start + self.edges[start..].partition_point(|e| e.t == t);
            let layer = &self.edges[start..end];
            match semantics {
                Semantics::NonStrict => {
                    let (labels, k) =
                        component_labels(self.n, layer.iter().map(|e| e.endpoints()));
                    let mut hit = vec![false; k];
                    for v in 0..self.n {
                        if reached[v] {
                            hit[labels[v]] = true;
                        }
                    }
                    for v in 0..self.n {
                        if hit[labels[v]] {
                            reached[v] = true;
                        }
                    }
                }
                Semantics::Strict => {
                    let mut fresh = Vec::new();
                    for e in layer {
                        if reached[e.u] && !reached[e.v] {
                            fresh.push(e.v);
                        } else if reached[e.v] && !reached[e.u] {
                            fresh.push(e.u);
                        }
                    }
                    for v in fresh {
                        reached[v] = true;
                    }
                }
            }
            start = end;
        }
        reached
    }

    /// Every vertex reaches every other vertex. Graphs with at most one
    /// vertex are connected.
    pub fn is_temporally_connected(&self, semantics: Semantics) -> bool {
        (0..self.n).all(|s| self.reach_mask(s, semantics).iter().all(|&r| r))
    }

    /// Component-chain test for non-strict connectivity: every time-1
    /// component must reach every time-T component through a chain of
    /// snapshot components with pairwise-consecutive nonempty intersections.
    ///
    /// A graph with lifespan 0 has no snapshots; it is treated like an
    /// edgeless one (connected iff `n <= 1`).
    pub fn check_property_p(&self) -> bool {
        let lifespan = self.lifespan();
        if lifespan == 0 || self.n <= 1 {
            return self.n <= 1;
        }
        let layers: Vec<(Vec<usize>, usize)> =
            (1..=lifespan).map(|t| self.component_labels_at(t)).collect();
        // arcs[t][c] = components at layer t+1 meeting component c of layer t
        let arcs: Vec<Vec<Vec<usize>>> = layers
            .windows(2)
            .map(|w| {
                let (ref cur, kc) = w[0];
                let (ref next, _) = w[1];
                let mut out: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); kc];
                for v in 0..self.n {
                    out[cur[v]].insert(next[v]);
                }
                out.into_iter().map(|s| s.into_iter().collect()).collect()
            })
            .collect();
        let (_, k_first) = layers[0];
        let (_, k_last) = layers[layers.len() - 1];
        for c in 0..k_first {
            let mut frontier = vec![c];
            for step in &arcs {
                let mut next: BTreeSet<usize> = BTreeSet::new();
                for &x in &frontier {
                    next.extend(step[x].iter().copied());
                }
                frontier = next.into_iter().collect();
            }
            if frontier.len() != k_last {
                return false;
            }
        }
        true
    }

    /// `self ↑ f`: adds the temporal edges of `f`. The lifespan becomes the
    /// larger of the two.
    pub fn augment(&self, f: &[TemporalEdge]) -> Result<TemporalGraph> {
        for e in f {
            if self.contains(e) {
                return Err(Error::InvalidCandidate {
                    edge: *e,
                    reason: "already present in the graph",
                });
            }
        }
        let mut g = TemporalGraph::new(self.n, self.edges.iter().chain(f).copied())?;
        g.names = self.names.clone();
        let lifespan = self.lifespan().max(g.max_edge_time());
        g.with_lifespan(lifespan)
    }

    /// A foremost journey from `from` to `to`, if one exists.
    pub fn find_journey(
        &self,
        from: VertexId,
        to: VertexId,
        semantics: Semantics,
    ) -> Result<Option<Journey>> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let mut pred: Vec<Option<Hop>> = vec![None; self.n];
        let mut reached = vec![false; self.n];
        reached[from] = true;
        let mut start = 0;
        while start < self.edges.len() && !reached[to] {
            let t = self.edges[start].t;
            let end = start + self.edges[start..].partition_point(|e| e.t == t);
            let layer = &self.edges[start..end];
            match semantics {
                Semantics::NonStrict => {
                    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); self.n];
                    for e in layer {
                        adj[e.u].push(e.v);
                        adj[e.v].push(e.u);
                    }
                    let mut queue: VecDeque<VertexId> =
                        (0..self.n).filter(|&v| reached[v] && !adj[v].is_empty()).collect();
                    while let Some(x) = queue.pop_front() {
                        for &y in &adj[x] {
                            if !reached[y] {
                                reached[y] = true;
                                pred[y] = Some(Hop { from: x, to: y, t });
                                queue.push_back(y);
                            }
                        }
                    }
                }
                Semantics::Strict => {
                    let mut fresh = Vec::new();
                    for e in layer {
                        if reached[e.u] && !reached[e.v] {
                            fresh.push(Hop { from: e.u, to: e.v, t });
                        } else if reached[e.v] && !reached[e.u] {
                            fresh.push(Hop { from: e.v, to: e.u, t });
                        }
                    }
                    for hop in fresh {
                        if !reached[hop.to] {
                            reached[hop.to] = true;
                            pred[hop.to] = Some(hop);
                        }
                    }
                }
            }
            start = end;
        }
        if !reached[to] {
            return Ok(None);
        }
        let mut hops = Vec::new();
        let mut at = to;
        while let Some(hop) = pred[at] {
            hops.push(hop);
            at = hop.from;
        }
        hops.reverse();
        Ok(Some(Journey {
            start: from,
            hops,
            semantics,
        }))
    }
}
