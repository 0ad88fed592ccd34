//! Exact minimum-cost augmentation by cost-ordered subset search.
//!
//! Units are single candidate edges (per-edge cost) or endpoint-pair groups
//! (edge-by-edge cost). For each cost `c = 0, 1, ...` the `c`-subsets of
//! units are enumerated in lexicographic order; the first satisfying subset
//! is the lexicographically least minimum. A branch is abandoned as soon as
//! the chosen units together with every later unit fail the requirement,
//! which is sound because the requirement is monotone in the edge set.
//!
//! Non-strict reachability depends only on the snapshot partitions, so in
//! that setting two extra reductions apply: an edge whose endpoints already
//! share a base component at its time is dropped, and among per-edge
//! candidates joining the same two base components at the same time only
//! the first in canonical order is kept.

use std::collections::BTreeMap;
use std::collections::HashSet;

use rayon::prelude::*;

use super::{AugmentationProblem, Checker, CostModel, Outcome, Solution};
use crate::error::Result;
use crate::temporal_graph::{Semantics, TemporalEdge, VertexId};

struct Unit {
    /// Edges that take part in the search.
    active: Vec<TemporalEdge>,
    /// Edges reported when the unit is selected.
    full: Vec<TemporalEdge>,
}

fn build_units(problem: &AugmentationProblem, checker: &Checker) -> Vec<Unit> {
    let nonstrict = problem.semantics() == Semantics::NonStrict;
    let labels: Vec<(Vec<usize>, usize)> = if nonstrict {
        (0..=checker.lifespan()).map(|t| checker.base_labels(t)).collect()
    } else {
        Vec::new()
    };
    let void = |e: &TemporalEdge| {
        nonstrict && {
            let (ref lab, _) = labels[e.t() as usize];
            lab[e.u()] == lab[e.v()]
        }
    };
    match problem.cost_model() {
        CostModel::PerTemporalEdge => {
            let mut seen = HashSet::new();
            problem
                .candidates()
                .iter()
                .filter(|e| !void(e))
                .filter(|e| {
                    if !nonstrict {
                        return true;
                    }
                    let (ref lab, _) = labels[e.t() as usize];
                    let (a, b) = (lab[e.u()], lab[e.v()]);
                    seen.insert((e.t(), a.min(b), a.max(b)))
                })
                .map(|e| Unit {
                    active: vec![*e],
                    full: vec![*e],
                })
                .collect()
        }
        CostModel::EdgeByEdge => {
            let mut groups: BTreeMap<(VertexId, VertexId), Vec<TemporalEdge>> = BTreeMap::new();
            for e in problem.candidates() {
                groups.entry(e.endpoints()).or_default().push(*e);
            }
            groups
                .into_values()
                .filter_map(|full| {
                    let active: Vec<TemporalEdge> = full.iter().filter(|e| !void(e)).copied().collect();
                    (!active.is_empty()).then_some(Unit { active, full })
                })
                .collect()
        }
    }
}

struct Search<'a> {
    checker: &'a Checker,
    units: &'a [Unit],
}

impl Search<'_> {
    fn satisfied(&self, chosen: &[usize], tail_from: usize) -> bool {
        let edges = chosen
            .iter()
            .copied()
            .chain(tail_from..self.units.len())
            .flat_map(|i| self.units[i].active.iter());
        self.checker.satisfied(edges)
    }

    /// Extends `chosen` to exactly `size` units using indices `>= start`.
    fn extend(&self, size: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return self.satisfied(chosen, self.units.len());
        }
        let need = size - chosen.len();
        if start + need > self.units.len() {
            return false;
        }
        for i in start..=self.units.len() - need {
            if !self.satisfied(chosen, i) {
                // every later start sees a subset of this tail
                break;
            }
            chosen.push(i);
            if self.extend(size, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    fn level(&self, size: usize, parallel: bool) -> Option<Vec<usize>> {
        if size == 0 {
            return self.satisfied(&[], self.units.len()).then(Vec::new);
        }
        if size > self.units.len() {
            return None;
        }
        if !parallel {
            let mut chosen = Vec::new();
            return self.extend(size, 0, &mut chosen).then_some(chosen);
        }
        (0..=self.units.len() - size)
            .into_par_iter()
            .find_map_first(|first| {
                if !self.satisfied(&[], first) {
                    return None;
                }
                let mut chosen = vec![first];
                self.extend(size, first + 1, &mut chosen).then_some(chosen)
            })
    }
}

fn run(problem: &AugmentationProblem, parallel: bool) -> Result<Outcome> {
    let checker = Checker::new(problem);
    let units = build_units(problem, &checker);
    let search = Search {
        checker: &checker,
        units: &units,
    };
    if !search.satisfied(&[], 0) {
        return Ok(Outcome::Infeasible);
    }
    let cap = problem.budget().map_or(units.len(), |b| b.min(units.len()));
    for size in 0..=cap {
        if let Some(chosen) = search.level(size, parallel) {
            let mut selected: Vec<TemporalEdge> =
                chosen.iter().flat_map(|&i| units[i].full.iter().copied()).collect();
            selected.sort_unstable();
            return Ok(Outcome::Solved(Solution::certify(problem, selected)?));
        }
    }
    Ok(Outcome::OverBudget {
        budget: problem.budget().unwrap_or(cap),
    })
}

/// Minimum-cost solution, or the reason there is none. Among minimum
/// solutions the lexicographically least (canonical edge order, or endpoint
/// pair order for groups) is returned.
pub fn solve_exact(problem: &AugmentationProblem) -> Result<Outcome> {
    run(problem, false)
}

/// Same result as [`solve_exact`], with each cost level split across the
/// current rayon pool.
pub fn solve_exact_parallel(problem: &AugmentationProblem) -> Result<Outcome> {
    run(problem, true)
}
