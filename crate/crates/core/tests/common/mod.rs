//! Brute-force oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls the library's algorithms; graphs are plain
//! `(u, v, t)` triples and reachability is a search over `(vertex, time)`
//! states.

#![allow(dead_code)]

use std::collections::{BTreeSet, BinaryHeap, HashMap};

use rand::Rng;
use tcaug_core::{TemporalEdge, TemporalGraph};

pub type Triple = (usize, usize, u32);

pub fn triples(g: &TemporalGraph) -> Vec<Triple> {
    g.edges().iter().map(|e| (e.u(), e.v(), e.t())).collect()
}

pub fn edge(u: usize, v: usize, t: u32) -> TemporalEdge {
    TemporalEdge::new(u, v, t).unwrap()
}

/// Vertices reachable from `s`: closure over states `(vertex, arrival)`,
/// starting at `(s, 0)`.
pub fn reach(n: usize, edges: &[Triple], s: usize, strict: bool) -> Vec<bool> {
    let mut seen: BTreeSet<(usize, u32)> = BTreeSet::new();
    let mut stack = vec![(s, 0u32)];
    while let Some((x, at)) = stack.pop() {
        if !seen.insert((x, at)) {
            continue;
        }
        for &(a, b, t) in edges {
            let ok = if strict { t > at } else { t >= at };
            if !ok {
                continue;
            }
            if a == x {
                stack.push((b, t));
            } else if b == x {
                stack.push((a, t));
            }
        }
    }
    let mut out = vec![false; n];
    for (v, _) in seen {
        out[v] = true;
    }
    out
}

pub fn connected(n: usize, edges: &[Triple], strict: bool) -> bool {
    (0..n).all(|s| reach(n, edges, s, strict).iter().all(|&r| r))
}

pub fn pair_met(n: usize, edges: &[Triple], pairs: &[(usize, usize)], strict: bool) -> usize {
    let mut cache: HashMap<usize, Vec<bool>> = HashMap::new();
    pairs
        .iter()
        .filter(|&&(a, b)| cache.entry(a).or_insert_with(|| reach(n, edges, a, strict))[b])
        .count()
}

/// Static components by DFS, labeled in order of smallest member.
pub fn components(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        label[s] = next;
        while let Some(x) = stack.pop() {
            for &(a, b) in pairs {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if label[y] == usize::MAX {
                    label[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    label
}

/// Every possible temporal edge over `n` vertices and times `1..=t`, in
/// canonical order.
pub fn all_edges(n: usize, lifespan: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for t in 1..=lifespan {
        for u in 0..n {
            for v in u + 1..n {
                out.push((u, v, t));
            }
        }
    }
    out
}

pub fn from_mask(universe: &[Triple], mask: u64) -> Vec<Triple> {
    universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

pub fn graph(n: usize, edges: &[Triple], lifespan: u32) -> TemporalGraph {
    TemporalGraph::from_triples(n, edges.iter().copied())
        .unwrap()
        .with_lifespan(lifespan)
        .unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Edge masks over `all_edges(n, lifespan)` that are the smallest in their
/// orbit under vertex relabeling.
pub fn isomorphism_classes(n: usize, lifespan: u32) -> Vec<u64> {
    let universe = all_edges(n, lifespan);
    let index: HashMap<Triple, usize> = universe.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            universe
                .iter()
                .map(|&(u, v, t)| index[&(p[u].min(p[v]), p[u].max(p[v]), t)])
                .collect()
        })
        .collect();
    (0..1u64 << universe.len())
        .filter(|&mask| {
            images.iter().all(|img| {
                let mut m = 0u64;
                for (i, &j) in img.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        m |= 1 << j;
                    }
                }
                m >= mask
            })
        })
        .collect()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, lifespan: u32, p: f64) -> Vec<Triple> {
    all_edges(n, lifespan).into_iter().filter(|_| rng.gen_bool(p)).collect()
}

/// Smallest `k` such that some `k`-subset of `units` (each a list of
/// temporal edges) makes `ok` hold, searching sizes up to `max`.
/// Include/exclude search; a branch stops when even all remaining units
/// fail, which is sound for monotone `ok`.
pub fn min_units<F>(units: &[Vec<Triple>], max: usize, ok: F) -> Option<usize>
where
    F: Fn(&[Triple]) -> bool,
{
    fn feasible<F: Fn(&[Triple]) -> bool>(
        units: &[Vec<Triple>],
        size: usize,
        i: usize,
        chosen: &mut Vec<Triple>,
        count: usize,
        ok: &F,
    ) -> bool {
        if count == size {
            return ok(chosen);
        }
        if units.len() - i < size - count {
            return false;
        }
        let mut all = chosen.clone();
        all.extend(units[i..].iter().flatten());
        if !ok(&all) {
            return false;
        }
        let keep = chosen.len();
        chosen.extend(units[i].iter());
        if feasible(units, size, i + 1, chosen, count + 1, ok) {
            return true;
        }
        chosen.truncate(keep);
        feasible(units, size, i + 1, chosen, count, ok)
    }
    (0..=max.min(units.len())).find(|&size| feasible(units, size, 0, &mut Vec::new(), 0, &ok))
}

/// Minimum number of candidates (each its own unit) to add.
pub fn min_added<F>(base: &[Triple], cands: &[Triple], max: usize, ok: F) -> Option<usize>
where
    F: Fn(&[Triple]) -> bool,
{
    let units: Vec<Vec<Triple>> = cands.iter().map(|&c| vec![c]).collect();
    min_units(&units, max, |extra| {
        let mut all = base.to_vec();
        all.extend_from_slice(extra);
        ok(&all)
    })
}

/// Fewest edges of `edges` keeping temporal connectivity, by enumerating
/// all subsets.
pub fn spanner_min(n: usize, edges: &[Triple]) -> usize {
    (0..1u64 << edges.len())
        .filter(|&m| connected(n, &from_mask(edges, m), false))
        .map(|m| m.count_ones() as usize)
        .min()
        .expect("input is connected")
}

pub fn min_dominating_set(n: usize, adj: &[(usize, usize)]) -> usize {
    (0..1u32 << n)
        .filter(|&m| {
            (0..n).all(|v| {
                m >> v & 1 == 1
                    || adj
                        .iter()
                        .any(|&(a, b)| (a == v && m >> b & 1 == 1) || (b == v && m >> a & 1 == 1))
            })
        })
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

pub fn min_hitting_set(n: usize, sets: &[Vec<usize>]) -> Option<usize> {
    (0..1u32 << n)
        .filter(|&m| sets.iter().all(|s| s.iter().any(|&e| m >> e & 1 == 1)))
        .map(|m| m.count_ones() as usize)
        .min()
}

/// A largest family of pairwise disjoint subcollections that each cover
/// `0..n`, by trying every labeling of the sets. Empty when none exists.
pub fn disjoint_covers(n: usize, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let m = sets.len();
    let covers = |group: &[usize]| {
        let mut hit = vec![false; n];
        for &j in group {
            for &e in &sets[j] {
                hit[e] = true;
            }
        }
        hit.iter().all(|&h| h)
    };
    for k in (1..=m).rev() {
        let mut label = vec![0usize; m];
        loop {
            let groups: Vec<Vec<usize>> = (0..k)
                .map(|g| (0..m).filter(|&j| label[j] == g).collect())
                .collect();
            if groups.iter().all(|g| covers(g)) {
                return groups;
            }
            let mut i = 0;
            while i < m && label[i] == k - 1 {
                label[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            label[i] += 1;
        }
    }
    Vec::new()
}

pub fn satisfiable(n: usize, clauses: &[Vec<(usize, bool)>]) -> bool {
    (0..1u32 << n).any(|m| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&(v, pos)| (m >> v & 1 == 1) == pos))
    })
}

/// Dijkstra over an explicit arc list.
pub fn shortest_path(nodes: usize, arcs: &[(usize, usize, u64)], s: usize, t: usize) -> Option<u64> {
    let mut dist = vec![u64::MAX; nodes];
    let mut heap = BinaryHeap::new();
    dist[s] = 0;
    heap.push(std::cmp::Reverse((0u64, s)));
    while let Some(std::cmp::Reverse((d, x))) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for &(a, b, w) in arcs {
            if a == x && d + w < dist[b] {
                dist[b] = d + w;
                heap.push(std::cmp::Reverse((d + w, b)));
            }
        }
    }
    (dist[t] != u64::MAX).then_some(dist[t])
}

/// Minimum OR-combinations to reach all ones, by iterative deepening over
/// plain row-vector states. Each zero row needs its own row merge, which
/// bounds the remaining depth from below.
pub fn octo_min(rows: &[Vec<bool>], max_depth: usize) -> Option<usize> {
    fn zero_rows(m: &[Vec<bool>]) -> usize {
        m.iter().filter(|r| r.iter().all(|&b| !b)).count()
    }
    fn done(m: &[Vec<bool>]) -> bool {
        m.iter().all(|r| r.iter().all(|&b| b))
    }
    fn dfs(m: &[Vec<bool>], left: usize) -> bool {
        if done(m) {
            return true;
        }
        if left == 0 || zero_rows(m) > left {
            return false;
        }
        let (r, c) = (m.len(), m[0].len());
        for i in 0..r {
            for j in i + 1..r {
                // equal rows give the same children as their first copies
                if m[..i].contains(&m[i]) || m[..j].iter().enumerate().any(|(k, x)| k != i && *x == m[j]) {
                    continue;
                }
                let mut next = m.to_vec();
                let gone = next.remove(j);
                for (x, y) in next[i].iter_mut().zip(gone) {
                    *x |= y;
                }
                if dfs(&next, left - 1) {
                    return true;
                }
            }
        }
        for i in 0..c {
            for j in i + 1..c {
                let next: Vec<Vec<bool>> = m
                    .iter()
                    .map(|row| {
                        let mut row = row.clone();
                        let gone = row.remove(j);
                        row[i] |= gone;
                        row
                    })
                    .collect();
                if dfs(&next, left - 1) {
                    return true;
                }
            }
        }
        false
    }
    if rows.iter().all(|r| r.iter().all(|&b| !b)) {
        return None;
    }
    (0..=max_depth).find(|&d| dfs(rows, d))
}

/// All vertex-simple journeys from `s`, as hop lists `(from, to, t)`.
pub fn simple_journeys(edges: &[Triple], s: usize, strict: bool) -> Vec<Vec<(usize, usize, u32)>> {
    fn go(
        edges: &[Triple],
        strict: bool,
        at: usize,
        last: u32,
        visited: &mut Vec<usize>,
        hops: &mut Vec<(usize, usize, u32)>,
        out: &mut Vec<Vec<(usize, usize, u32)>>,
    ) {
        out.push(hops.clone());
        for &(a, b, t) in edges {
            let ok = if strict { t > last } else { t >= last };
            let next = if a == at {
                b
            } else if b == at {
                a
            } else {
                continue;
            };
            if !ok || visited.contains(&next) {
                continue;
            }
            visited.push(next);
            hops.push((at, next, t));
            go(edges, strict, next, t, visited, hops, out);
            hops.pop();
            visited.pop();
        }
    }
    let mut out = Vec::new();
    go(edges, strict, s, 0, &mut vec![s], &mut Vec::new(), &mut out);
    out
}

/// Visits every node-simple path from `s` to `t`. Stops early and returns
/// false once more than `cap` paths have been seen.
pub fn for_each_simple_path<F: FnMut(&[usize])>(
    nodes: usize,
    arcs: &[(usize, usize)],
    s: usize,
    t: usize,
    cap: usize,
    mut visit: F,
) -> bool {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in arcs {
        adj[a].push(b);
    }
    let mut on = vec![false; nodes];
    on[s] = true;
    let mut path = vec![s];
    // explicit stack of next-neighbor cursors
    let mut cursor = vec![0usize];
    let mut seen = 0usize;
    if s == t {
        visit(&path);
        return true;
    }
    while let Some(&x) = path.last() {
        let c = cursor.last_mut().unwrap();
        if *c == adj[x].len() {
            on[x] = false;
            path.pop();
            cursor.pop();
            continue;
        }
        let y = adj[x][*c];
        *c += 1;
        if on[y] {
            continue;
        }
        if y == t {
            path.push(y);
            visit(&path);
            path.pop();
            seen += 1;
            if seen > cap {
                return false;
            }
            continue;
        }
        on[y] = true;
        path.push(y);
        cursor.push(0);
    }
    true
}

/// Static graphs on `n` vertices as edge lists, one per subset of pairs.
pub fn all_static_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|m| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

/// Multisets of `m` subsets of `0..n`, each subset as a sorted list.
pub fn set_systems(n: usize, m: usize, allow_empty: bool) -> Vec<Vec<Vec<usize>>> {
    let subsets: Vec<Vec<usize>> = (u32::from(!allow_empty)..1u32 << n)
        .map(|s| (0..n).filter(|&e| s >> e & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    if m == 0 {
        return vec![Vec::new()];
    }
    loop {
        out.push(idx.iter().map(|&i| subsets[i].clone()).collect());
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] + 1 < subsets.len() {
                idx[k] += 1;
                for r in k + 1..m {
                    idx[r] = idx[k];
                }
                break;
            }
        }
    }
}

/// Keeps one set system per orbit under element relabeling.
pub fn dedup_set_systems(n: usize, systems: Vec<Vec<Vec<usize>>>) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(n);
    let canon = |sys: &Vec<Vec<usize>>| {
        perms
            .iter()
            .map(|p| {
                let mut s: Vec<Vec<usize>> = sys
                    .iter()
                    .map(|set| {
                        let mut x: Vec<usize> = set.iter().map(|&e| p[e]).collect();
                        x.sort_unstable();
                        x
                    })
                    .collect();
                s.sort();
                s
            })
            .min()
            .unwrap()
    };
    let mut seen = BTreeSet::new();
    systems.into_iter().filter(|s| seen.insert(canon(s))).collect()
}

/// 3-CNF formulas over `n` variables with `m` clauses, one per orbit under
/// variable renaming, polarity flips and clause order. Literals are
/// `(var, positive)`.
pub fn cnf_classes(n: usize, m: usize) -> Vec<Vec<[(usize, bool); 3]>> {
    let lits: Vec<(usize, bool)> = (0..n).flat_map(|v| [(v, true), (v, false)]).collect();
    let mut clauses: Vec<[(usize, bool); 3]> = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                let cl = [lits[a], lits[b], lits[c]];
                let clash = cl.iter().any(|x| cl.iter().any(|y| x.0 == y.0 && x.1 != y.1));
                if !clash {
                    clauses.push(cl);
                }
            }
        }
    }
    let perms = permutations(n);
    let canon = |f: &[[(usize, bool); 3]]| {
        let mut best: Option<Vec<[(usize, bool); 3]>> = None;
        for p in &perms {
            for flips in 0..1u32 << n {
                let mut g: Vec<[(usize, bool); 3]> = f
                    .iter()
                    .map(|c| {
                        let mut c2 = c.map(|(v, pos)| (p[v], pos ^ (flips >> v & 1 == 1)));
                        c2.sort();
                        c2
                    })
                    .collect();
                g.sort();
                if best.as_ref().is_none_or(|b| g < *b) {
                    best = Some(g);
                }
            }
        }
        best.unwrap()
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        let f: Vec<[(usize, bool); 3]> = idx.iter().map(|&i| clauses[i]).collect();
        if seen.insert(canon(&f)) {
            out.push(f);
        }
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] + 1 < clauses.len() {
                idx[k] += 1;
                for r in k + 1..m {
                    idx[r] = idx[k];
                }
                break;
            }
        }
    }
}
