//! Plain-text source instances for the gadget generators.
//!
//! * DIMACS CNF: `c` comments, a `p cnf <vars> <clauses>` header, clauses as
//!   1-based signed literals terminated by `0`. Every clause needs exactly
//!   three literals.
//! * Edge lists: the first record is the vertex count, then one `u v` pair
//!   per line.
//! * Set lists: an optional `U <n>` universe line, then `S <i>: e e e` with
//!   0-based set indices and elements. Without `U` the universe is
//!   `0..=max element`.
//!
//! `#` starts a comment in edge and set lists.

use super::{CnfInstance, Literal};
use crate::error::{Error, Result};
use crate::temporal_graph::VertexId;

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{field}`")))
}

fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') || body.starts_with('%') {
            continue;
        }
        last_line = line;
        if body.starts_with('p') {
            let f: Vec<&str> = body.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(Error::parse(line, "expected a single `p cnf <vars> <clauses>` header"));
            }
            header = Some((number(line, f[2], "variable count")?, number(line, f[3], "clause count")?));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(Error::parse(line, "clause before the `p cnf` header"));
        };
        for tok in body.split_whitespace() {
            let x: i64 = number(line, tok, "literal")?;
            if x == 0 {
                let lits: [Literal; 3] = current
                    .as_slice()
                    .try_into()
                    .map_err(|_| Error::parse(line, format!("clause has {} literals, expected 3", current.len())))?;
                clauses.push(lits);
                current.clear();
                continue;
            }
            let var = x.unsigned_abs() as usize;
            if var > n {
                return Err(Error::parse(line, format!("variable {var} exceeds declared {n}")));
            }
            current.push(Literal {
                var: var - 1,
                positive: x > 0,
            });
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(Error::parse(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfInstance::new(n, clauses).map_err(|e| Error::parse(last_line, e.to_string()))
}

pub fn format_dimacs(cnf: &CnfInstance) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.n, cnf.m());
    for c in &cnf.clauses {
        for l in c {
            let v = l.var as i64 + 1;
            out.push_str(&format!("{} ", if l.positive { v } else { -v }));
        }
        out.push_str("0\n");
    }
    out
}

/// Returns the vertex count and the edge pairs.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(VertexId, VertexId)>)> {
    let mut recs = records(text);
    let (line, first) = recs.next().ok_or_else(|| Error::parse(0, "missing vertex count"))?;
    let n: usize = number(line, first, "vertex count")?;
    let mut edges = Vec::new();
    for (line, body) in recs {
        let f: Vec<&str> = body.split_whitespace().collect();
        if f.len() != 2 {
            return Err(Error::parse(line, "expected `<u> <v>`"));
        }
        let u: VertexId = number(line, f[0], "vertex")?;
        let v: VertexId = number(line, f[1], "vertex")?;
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::parse(line, "self-loop"));
        }
        edges.push((u, v));
    }
    Ok((n, edges))
}

/// Returns the universe size and the sets in index order.
pub fn parse_set_list(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut universe: Option<usize> = None;
    let mut sets: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (line, body) in records(text) {
        if let Some(rest) = body.strip_prefix('U') {
            if universe.is_some() || !sets.is_empty() {
                return Err(Error::parse(line, "`U` must come once, before the sets"));
            }
            universe = Some(number(line, rest.trim(), "universe size")?);
            continue;
        }
        let Some(rest) = body.strip_prefix('S') else {
            return Err(Error::parse(line, "expected `S <i>: <elements>` or `U <n>`"));
        };
        let (idx, elems) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse(line, "missing `:` after the set index"))?;
        let idx: usize = number(line, idx.trim(), "set index")?;
        let elems = elems
            .split_whitespace()
            .map(|e| number(line, e, "element"))
            .collect::<Result<Vec<usize>>>()?;
        if let (Some(n), Some(&bad)) = (universe, elems.iter().find(|&&e| Some(e) >= universe)) {
            return Err(Error::parse(line, format!("element {bad} outside universe 0..{n}")));
        }
        sets.push((idx, line, elems));
    }
    sets.sort_by_key(|s| s.0);
    for (expect, (idx, line, _)) in sets.iter().enumerate() {
        if *idx != expect {
            return Err(Error::parse(*line, format!("set indices must be 0..m without gaps, found {idx}")));
        }
    }
    let n = universe.unwrap_or_else(|| {
        sets.iter()
            .flat_map(|(_, _, s)| s.iter())
            .max()
            .map_or(0, |&e| e + 1)
    });
    Ok((n, sets.into_iter().map(|(_, _, s)| s).collect()))
}

pub fn format_set_list(n: usize, sets: &[Vec<usize>]) -> String {
    let mut out = format!("U {n}\n");
    for (i, s) in sets.iter().enumerate() {
        let elems: Vec<String> = s.iter().map(usize::to_string).collect();
        out.push_str(&format!("S {i}: {}\n", elems.join(" ")));
    }
    out
}
