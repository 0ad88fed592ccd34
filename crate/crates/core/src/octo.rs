//! Binary matrix view of lifespan-2 augmentation.
//!
//! Rows index the time-1 snapshot components, columns the time-2 ones, and
//! an entry is 1 when the two components share a vertex. A lifespan-2 graph
//! is non-strictly connected iff its matrix is all ones, and adding an edge
//! at time 1 (resp. 2) between two components ORs the two rows (resp.
//! columns) together.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::temporal_graph::{TemporalEdge, TemporalGraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "rows")]
    Rows,
    #[serde(rename = "cols")]
    Cols,
}

impl BinaryMatrix {
    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::contract("matrix needs at least one row and one column"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::contract("matrix rows have different lengths"));
        }
        Ok(BinaryMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from 0/1 integers.
    pub fn from_bits(rows: &[&[u8]]) -> Result<Self> {
        BinaryMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect())
    }

    pub fn identity(k: usize) -> Result<Self> {
        BinaryMatrix::from_rows((0..k).map(|i| (0..k).map(|j| i == j).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ones(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn is_all_ones(&self) -> bool {
        self.data.iter().all(|&b| b)
    }

    pub fn has_zero_line(&self) -> bool {
        let zero_row = (0..self.rows).any(|i| self.row(i).iter().all(|&b| !b));
        let zero_col = (0..self.cols).any(|j| (0..self.rows).all(|i| !self.get(i, j)));
        zero_row || zero_col
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let rows = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).collect())
            .collect();
        BinaryMatrix::from_rows(rows).expect("non-empty")
    }

    pub fn len_along(&self, axis: Axis) -> usize {
        match axis {
            Axis::Rows => self.rows,
            Axis::Cols => self.cols,
        }
    }
}

/// Matrix of a lifespan-2 graph, components in canonical order.
pub fn component_intersection_matrix(g: &TemporalGraph) -> Result<BinaryMatrix> {
    if g.lifespan() != 2 {
        return Err(Error::contract(format!(
            "component-intersection matrix needs lifespan 2, got {}",
            g.lifespan()
        )));
    }
    if g.n() == 0 {
        return Err(Error::contract("graph has no vertices"));
    }
    let (l1, k1) = g.component_labels_at(1);
    let (l2, k2) = g.component_labels_at(2);
    let mut rows = vec![vec![false; k2]; k1];
    for v in 0..g.n() {
        rows[l1[v]][l2[v]] = true;
    }
    BinaryMatrix::from_rows(rows)
}

/// Simple lifespan-2 graph whose matrix is `b`: one vertex per 1-entry in
/// row-major order, a clique per row at time 1 and per column at time 2.
///
/// Rows come back in the same order; columns come back ordered by their
/// first 1 in row-major order, so the round trip is exact up to that column
/// relabeling.
pub fn matrix_to_graph(b: &BinaryMatrix) -> Result<TemporalGraph> {
    if b.has_zero_line() {
        return Err(Error::contract("matrix has an all-zero row or column"));
    }
    let mut cells = Vec::new();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            if b.get(i, j) {
                cells.push((i, j));
            }
        }
    }
    let mut edges = Vec::new();
    for (x, &(i, j)) in cells.iter().enumerate() {
        for (y, &(i2, j2)) in cells.iter().enumerate().skip(x + 1) {
            if i == i2 {
                edges.push(TemporalEdge::new(x, y, 1)?);
            }
            if j == j2 {
                edges.push(TemporalEdge::new(x, y, 2)?);
            }
        }
    }
    TemporalGraph::new(cells.len(), edges)?.with_lifespan(2)
}

/// ORs lines `i` and `j` along `axis`. The merged line takes the place of
/// the smaller index and the larger one is removed.
pub fn or_combine(b: &BinaryMatrix, axis: Axis, i: usize, j: usize) -> Result<BinaryMatrix> {
    let len = b.len_along(axis);
    for x in [i, j] {
        if x >= len {
            return Err(Error::Index { index: x, len });
        }
    }
    if i == j {
        return Err(Error::contract("cannot combine a line with itself"));
    }
    let (keep, drop) = (i.min(j), i.max(j));
    let mut rows = b.to_rows();
    match axis {
        Axis::Rows => {
            let gone = rows.remove(drop);
            for (x, y) in rows[keep].iter_mut().zip(gone) {
                *x |= y;
            }
        }
        Axis::Cols => {
            for row in &mut rows {
                let gone = row.remove(drop);
                row[keep] |= gone;
            }
        }
    }
    BinaryMatrix::from_rows(rows)
}

/// One OR-combination. `i`/`j` are indices in the matrix at the time of the
/// step (replayable through [`or_combine`]); `lines` lists the original
/// line indices the merged line now covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Merge {
    pub axis: Axis,
    pub i: usize,
    pub j: usize,
    pub lines: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OctoSolution {
    pub min_combinations: usize,
    pub sequence: Vec<Merge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OctoOutcome {
    Solved(OctoSolution),
    /// No sequence of at most `budget` combinations works.
    OverBudget { budget: usize },
    /// The matrix has no 1 at all.
    Infeasible,
    /// The search visited more than the configured number of states.
    LimitExceeded { states: usize },
}

impl OctoOutcome {
    pub fn min_combinations(&self) -> Option<usize> {
        match self {
            OctoOutcome::Solved(s) => Some(s.min_combinations),
            _ => None,
        }
    }
}

pub const DEFAULT_STATE_LIMIT: usize = 2_000_000;

/// Breadth-first search for the fewest OR-combinations reaching the
/// all-ones matrix, memoizing states up to row/column permutation.
pub fn solve_octo(b: &BinaryMatrix, budget: Option<usize>) -> Result<OctoOutcome> {
    solve_octo_with_limit(b, budget, DEFAULT_STATE_LIMIT)
}

#[derive(Clone)]
struct State {
    /// bit `c` of `rows[r]` is entry (r, c)
    rows: Vec<u64>,
    ncols: usize,
    row_lines: Vec<Vec<usize>>,
    col_lines: Vec<Vec<usize>>,
}

struct Node {
    state: State,
    parent: usize,
    step: Option<Merge>,
}

impl State {
    fn full(&self) -> u64 {
        if self.ncols == 64 {
            u64::MAX
        } else {
            (1u64 << self.ncols) - 1
        }
    }

    fn is_goal(&self) -> bool {
        let full = self.full();
        self.rows.iter().all(|&r| r == full)
    }

    fn merge_rows(&self, i: usize, j: usize) -> (State, Merge) {
        let mut s = self.clone();
        let gone = s.rows.remove(j);
        s.rows[i] |= gone;
        let lines = s.row_lines.remove(j);
        s.row_lines[i].extend(lines);
        s.row_lines[i].sort_unstable();
        let step = Merge {
            axis: Axis::Rows,
            i,
            j,
            lines: s.row_lines[i].clone(),
        };
        (s, step)
    }

    fn merge_cols(&self, i: usize, j: usize) -> (State, Merge) {
        let mut s = self.clone();
        let low = (1u64 << j) - 1;
        for r in &mut s.rows {
            let bit_j = (*r >> j) & 1;
            *r |= bit_j << i;
            *r = (*r & low) | ((*r >> (j + 1)) << j);
        }
        s.ncols -= 1;
        let lines = s.col_lines.remove(j);
        s.col_lines[i].extend(lines);
        s.col_lines[i].sort_unstable();
        let step = Merge {
            axis: Axis::Cols,
            i,
            j,
            lines: s.col_lines[i].clone(),
        };
        (s, step)
    }

    fn column(&self, c: usize) -> Vec<bool> {
        self.rows.iter().map(|r| (r >> c) & 1 == 1).collect()
    }

    /// Merges in deterministic order, one per pair of line values: equal
    /// lines are interchangeable, so merging any other copy gives a state
    /// equal up to permutation.
    fn moves(&self) -> Vec<(Axis, usize, usize)> {
        fn representative<T: PartialEq>(lines: &[T], i: usize, j: usize) -> bool {
            !lines[..i].contains(&lines[i])
                && !lines[..j].iter().enumerate().any(|(k, l)| k != i && *l == lines[j])
        }
        let mut out = Vec::new();
        let nr = self.rows.len();
        for i in 0..nr {
            for j in i + 1..nr {
                if representative(&self.rows, i, j) {
                    out.push((Axis::Rows, i, j));
                }
            }
        }
        let cols: Vec<Vec<bool>> = (0..self.ncols).map(|c| self.column(c)).collect();
        for i in 0..self.ncols {
            for j in i + 1..self.ncols {
                if representative(&cols, i, j) {
                    out.push((Axis::Cols, i, j));
                }
            }
        }
        out
    }

    /// Permutation-invariant memo key: alternately sort rows and columns
    /// until stable. Equal keys imply permutation-equivalent matrices.
    fn key(&self) -> Vec<u64> {
        let mut rows = self.rows.clone();
        for _ in 0..4 {
            rows.sort_unstable();
            let mut order: Vec<usize> = (0..self.ncols).collect();
            let column = |c: usize| -> Vec<bool> { rows.iter().map(|r| (r >> c) & 1 == 1).collect() };
            order.sort_by_key(|&c| column(c));
            if order.iter().enumerate().all(|(a, &b)| a == b) {
                break;
            }
            rows = rows
                .iter()
                .map(|r| {
                    order
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (pos, &c)| acc | (((r >> c) & 1) << pos))
                })
                .collect();
        }
        rows.push(self.ncols as u64);
        rows
    }
}

pub fn solve_octo_with_limit(
    b: &BinaryMatrix,
    budget: Option<usize>,
    max_states: usize,
) -> Result<OctoOutcome> {
    if b.cols() > 64 {
        return Err(Error::contract("matrices wider than 64 columns are not supported"));
    }
    if b.ones() == 0 {
        return Ok(OctoOutcome::Infeasible);
    }
    let start = State {
        rows: (0..b.rows())
            .map(|i| {
                (0..b.cols()).fold(0u64, |acc, j| acc | (u64::from(b.get(i, j)) << j))
            })
            .collect(),
        ncols: b.cols(),
        row_lines: (0..b.rows()).map(|i| vec![i]).collect(),
        col_lines: (0..b.cols()).map(|j| vec![j]).collect(),
    };
    if start.is_goal() {
        return Ok(OctoOutcome::Solved(OctoSolution {
            min_combinations: 0,
            sequence: Vec::new(),
        }));
    }
    let mut nodes = vec![Node {
        state: start.clone(),
        parent: usize::MAX,
        step: None,
    }];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(start.key());
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        if budget.is_some_and(|k| depth >= k) {
            return Ok(OctoOutcome::OverBudget {
                budget: budget.unwrap_or(depth),
            });
        }
        depth += 1;
        let mut next = Vec::new();
        for &at in &frontier {
            let state = nodes[at].state.clone();
            for (axis, i, j) in state.moves() {
                let (child, step) = match axis {
                    Axis::Rows => state.merge_rows(i, j),
                    Axis::Cols => state.merge_cols(i, j),
                };
                if child.is_goal() {
                    let mut sequence = vec![step];
                    let mut cur = at;
                    while let Some(s) = &nodes[cur].step {
                        sequence.push(s.clone());
                        cur = nodes[cur].parent;
                    }
                    sequence.reverse();
                    return Ok(OctoOutcome::Solved(OctoSolution {
                        min_combinations: depth,
                        sequence,
                    }));
                }
                if seen.insert(child.key()) {
                    if seen.len() > max_states {
                        return Ok(OctoOutcome::LimitExceeded { states: seen.len() });
                    }
                    nodes.push(Node {
                        state: child,
                        parent: at,
                        step: Some(step),
                    });
                    next.push(nodes.len() - 1);
                }
            }
        }
        frontier = next;
    }
    // unreachable while the matrix has a 1: merging everything gives [1]
    Ok(OctoOutcome::Infeasible)
}

/// Applies a merge sequence with [`or_combine`].
pub fn replay(b: &BinaryMatrix, sequence: &[Merge]) -> Result<BinaryMatrix> {
    sequence
        .iter()
        .try_fold(b.clone(), |m, s| or_combine(&m, s.axis, s.i, s.j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal_graph::Semantics;

    #[test]
    fn matrix_of_connected_and_edgeless() {
        let g = TemporalGraph::from_triples(2, [(0, 1, 1), (0, 1, 2)]).unwrap();
        let m = component_intersection_matrix(&g).unwrap();
        assert_eq!(m, BinaryMatrix::from_bits(&[&[1]]).unwrap());
        let e = TemporalGraph::edgeless(2).with_lifespan(2).unwrap();
        assert_eq!(component_intersection_matrix(&e).unwrap(), BinaryMatrix::identity(2).unwrap());
        let g1 = TemporalGraph::from_triples(2, [(0, 1, 1)]).unwrap();
        assert!(component_intersection_matrix(&g1).is_err());
    }

    #[test]
    fn graph_from_matrix() {
        let one = matrix_to_graph(&BinaryMatrix::from_bits(&[&[1]]).unwrap()).unwrap();
        assert_eq!((one.n(), one.num_edges()), (1, 0));
        let full = BinaryMatrix::from_bits(&[&[1, 1], &[1, 1]]).unwrap();
        let g = matrix_to_graph(&full).unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.is_simple());
        assert!(g.check_property_p());
        assert_eq!(component_intersection_matrix(&g).unwrap(), full);
        let id = matrix_to_graph(&BinaryMatrix::identity(2).unwrap()).unwrap();
        assert_eq!((id.n(), id.num_edges()), (2, 0));
        assert!(!id.is_temporally_connected(Semantics::NonStrict));
        let zero = BinaryMatrix::from_bits(&[&[1, 0], &[1, 0]]).unwrap();
        assert!(matrix_to_graph(&zero).is_err());
    }

    #[test]
    fn combine_lines() {
        let id = BinaryMatrix::identity(2).unwrap();
        let c = or_combine(&id, Axis::Cols, 0, 1).unwrap();
        assert_eq!(c, BinaryMatrix::from_bits(&[&[1], &[1]]).unwrap());
        let dup = BinaryMatrix::from_bits(&[&[1, 0], &[1, 0], &[0, 1]]).unwrap();
        let r = or_combine(&dup, Axis::Rows, 1, 0).unwrap();
        assert_eq!(r, BinaryMatrix::from_bits(&[&[1, 0], &[0, 1]]).unwrap());
        assert!(or_combine(&id, Axis::Rows, 0, 0).is_err());
        assert!(matches!(or_combine(&id, Axis::Cols, 0, 2), Err(Error::Index { .. })));
    }

    #[test]
    fn octo_small_cases() {
        let ones = BinaryMatrix::from_bits(&[&[1, 1]]).unwrap();
        assert_eq!(solve_octo(&ones, None).unwrap().min_combinations(), Some(0));
        let id = BinaryMatrix::identity(2).unwrap();
        let OctoOutcome::Solved(s) = solve_octo(&id, None).unwrap() else {
            panic!("identity is solvable");
        };
        assert_eq!(s.min_combinations, 1);
        assert!(replay(&id, &s.sequence).unwrap().is_all_ones());
        let id3 = BinaryMatrix::identity(3).unwrap();
        assert_eq!(solve_octo(&id3, None).unwrap().min_combinations(), Some(2));
        assert_eq!(solve_octo(&id3, Some(1)).unwrap(), OctoOutcome::OverBudget { budget: 1 });
        let zero = BinaryMatrix::from_bits(&[&[0, 0]]).unwrap();
        assert_eq!(solve_octo(&zero, None).unwrap(), OctoOutcome::Infeasible);
        // a zero row forces a row merge
        let z = BinaryMatrix::from_bits(&[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(solve_octo(&z, None).unwrap().min_combinations(), Some(1));
    }

    #[test]
    fn witness_lines_track_originals() {
        let id = BinaryMatrix::identity(4).unwrap();
        let OctoOutcome::Solved(s) = solve_octo(&id, None).unwrap() else {
            panic!()
        };
        assert_eq!(s.min_combinations, 3);
        let last = s.sequence.last().unwrap();
        assert_eq!(last.lines, vec![0, 1, 2, 3]);
        assert!(replay(&id, &s.sequence).unwrap().is_all_ones());
    }

    #[test]
    fn limit_is_reported() {
        let id = BinaryMatrix::identity(5).unwrap();
        assert!(matches!(
            solve_octo_with_limit(&id, None, 3).unwrap(),
            OctoOutcome::LimitExceeded { .. }
        ));
    }
}
