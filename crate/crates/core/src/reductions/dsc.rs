use super::SetSystemInstance;
use crate::error::{Error, Result};
use crate::octo::{or_combine, Axis, BinaryMatrix, Merge};

/// OCTO instance built from a Disjoint Set Covers instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DscReduction {
    pub matrix: BinaryMatrix,
    /// `m - k`, or `None` when `k > m` and the answer is trivially no.
    pub budget: Option<usize>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

/// Matrix with `n(m+1)` rows and `m` columns: row `r` is the incidence
/// vector of element `r mod n`. The `m+1` copies of each element make row
/// merges pointless within a budget of `m - k`.
pub fn reduce_dsc(dsc: &SetSystemInstance) -> Result<DscReduction> {
    let (n, m, k) = (dsc.n, dsc.m(), dsc.k);
    if k == 0 {
        return Err(Error::contract("the number of covers must be at least 1"));
    }
    if n == 0 || m == 0 {
        return Err(Error::contract("need a nonempty universe and at least one set"));
    }
    let rows = (0..n * (m + 1))
        .map(|r| {
            let e = r % n;
            dsc.sets.iter().map(|s| s.binary_search(&e).is_ok()).collect()
        })
        .collect();
    Ok(DscReduction {
        matrix: BinaryMatrix::from_rows(rows)?,
        budget: m.checked_sub(k),
        n,
        m,
        k,
    })
}

/// Forward map: column merges that fold each cover into one column. Sets
/// outside every cover join the first cover. Yields exactly `m - covers`
/// merges.
pub fn merges_from_covers(dsc: &SetSystemInstance, covers: &[Vec<usize>]) -> Result<Vec<Merge>> {
    let m = dsc.m();
    let mut owner = vec![None; m];
    for (c, cover) in covers.iter().enumerate() {
        let mut hit = vec![false; dsc.n];
        for &j in cover {
            if j >= m {
                return Err(Error::Index { index: j, len: m });
            }
            if owner[j].replace(c).is_some() {
                return Err(Error::contract(format!("set {j} appears in two covers")));
            }
            for &e in &dsc.sets[j] {
                hit[e] = true;
            }
        }
        if !hit.iter().all(|&h| h) {
            return Err(Error::contract(format!("cover {c} misses an element")));
        }
    }
    if covers.is_empty() {
        return Err(Error::contract("no covers given"));
    }
    let owner: Vec<usize> = owner.into_iter().map(|o| o.unwrap_or(0)).collect();
    // columns of the current matrix, each a sorted list of original columns
    let mut groups: Vec<Vec<usize>> = (0..m).map(|j| vec![j]).collect();
    let mut out = Vec::new();
    for c in 0..covers.len() {
        loop {
            let mine: Vec<usize> = (0..groups.len()).filter(|&i| owner[groups[i][0]] == c).collect();
            if mine.len() < 2 {
                break;
            }
            let (i, j) = (mine[0], mine[1]);
            let gone = groups.remove(j);
            groups[i].extend(gone);
            groups[i].sort_unstable();
            out.push(Merge {
                axis: Axis::Cols,
                i,
                j,
                lines: groups[i].clone(),
            });
        }
    }
    Ok(out)
}

/// Backward map: replays an all-ones-reaching merge sequence and returns
/// the final column groups, each a cover.
///
/// With fewer than `m + 1` merges some row of every element is never
/// merged with another element's row, so every final column group covers
/// every element. The groups are disjoint and there are at least
/// `m - merges` of them.
pub fn covers_from_merges(dsc: &SetSystemInstance, sequence: &[Merge]) -> Result<Vec<Vec<usize>>> {
    let red = reduce_dsc(dsc)?;
    if sequence.len() > red.m {
        return Err(Error::contract("more merges than sets"));
    }
    let mut matrix = red.matrix.clone();
    let mut groups: Vec<Vec<usize>> = (0..red.m).map(|j| vec![j]).collect();
    for step in sequence {
        matrix = or_combine(&matrix, step.axis, step.i, step.j)?;
        if step.axis == Axis::Cols {
            let (keep, drop) = (step.i.min(step.j), step.i.max(step.j));
            let gone = groups.remove(drop);
            groups[keep].extend(gone);
            groups[keep].sort_unstable();
        }
    }
    if !matrix.is_all_ones() {
        return Err(Error::contract("merge sequence does not reach the all-ones matrix"));
    }
    Ok(groups)
}
