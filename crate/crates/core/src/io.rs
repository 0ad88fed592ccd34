//! Text and JSON formats for graphs, candidate sets and matrices.
//!
//! `.tg` (temporal graph), one record per line, `#` starts a comment:
//!
//! ```text
//! T 3          # optional lifespan override, before V
//! V 4          # vertex count, required
//! E 0 1 1 2    # edge {0,1} at times 1 and 2
//! ```
//!
//! `.cand` (candidate edges): lines `E <u> <v> <t>`, optionally with more
//! times. Matrix files: a `<rows> <cols>` header followed by rows of 0/1.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octo::BinaryMatrix;
use crate::temporal_graph::{TemporalEdge, TemporalGraph, Time, VertexId};

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{field}`")))
}

fn edge_record(line: usize, fields: &[&str], n: Option<usize>) -> Result<Vec<TemporalEdge>> {
    if fields.len() < 4 {
        return Err(Error::parse(line, "edge record needs `E <u> <v> <t> [<t> ...]`"));
    }
    let u: VertexId = number(line, fields[1], "vertex")?;
    let v: VertexId = number(line, fields[2], "vertex")?;
    if let Some(n) = n {
        for x in [u, v] {
            if x >= n {
                return Err(Error::parse(line, format!("vertex {x} out of range 0..{n}")));
            }
        }
    }
    fields[3..]
        .iter()
        .map(|f| {
            let t: Time = number(line, f, "time step")?;
            TemporalEdge::new(u, v, t).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

/// Parses the `.tg` format. Duplicate temporal edges are an error.
pub fn parse_tg(text: &str) -> Result<TemporalGraph> {
    let mut lifespan: Option<Time> = None;
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, TemporalEdge)> = Vec::new();
    for (line, fields) in records(text) {
        match fields[0] {
            "T" => {
                if n.is_some() || lifespan.is_some() {
                    return Err(Error::parse(line, "`T` must come once, before `V`"));
                }
                if fields.len() != 2 {
                    return Err(Error::parse(line, "expected `T <lifespan>`"));
                }
                lifespan = Some(number(line, fields[1], "lifespan")?);
            }
            "V" => {
                if n.is_some() {
                    return Err(Error::parse(line, "duplicate `V` record"));
                }
                if !edges.is_empty() {
                    return Err(Error::parse(line, "`V` must precede edges"));
                }
                if fields.len() != 2 {
                    return Err(Error::parse(line, "expected `V <n>`"));
                }
                n = Some(number(line, fields[1], "vertex count")?);
            }
            "E" => {
                if n.is_none() {
                    return Err(Error::parse(line, "`E` before `V`"));
                }
                for e in edge_record(line, &fields, n)? {
                    edges.push((line, e));
                }
            }
            other => return Err(Error::parse(line, format!("unknown record `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `V <n>` record"))?;
    let mut seen = std::collections::HashSet::new();
    for (line, e) in &edges {
        if !seen.insert(*e) {
            return Err(Error::parse(*line, format!("duplicate temporal edge {e}")));
        }
    }
    let g = TemporalGraph::new(n, edges.into_iter().map(|(_, e)| e))?;
    match lifespan {
        Some(t) => g.with_lifespan(t).map_err(|e| Error::parse(1, e.to_string())),
        None => Ok(g),
    }
}

/// Writes the `.tg` format: one `E` line per temporal edge in canonical order.
pub fn format_tg(g: &TemporalGraph) -> String {
    let mut out = String::new();
    if let Some(names) = g.names() {
        for (i, name) in names.iter().enumerate() {
            let _ = writeln!(out, "# {i} = {name}");
        }
    }
    if let Some(t) = g.declared_lifespan() {
        let _ = writeln!(out, "T {t}");
    }
    let _ = writeln!(out, "V {}", g.n());
    for e in g.edges() {
        let _ = writeln!(out, "E {} {} {}", e.u(), e.v(), e.t());
    }
    out
}

/// Parses a `.cand` candidate list. Vertex bounds are checked against the
/// problem later.
pub fn parse_cand(text: &str) -> Result<Vec<TemporalEdge>> {
    let mut out: Vec<TemporalEdge> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, fields) in records(text) {
        if fields[0] != "E" {
            return Err(Error::parse(line, format!("unknown record `{}`", fields[0])));
        }
        for e in edge_record(line, &fields, None)? {
            if !seen.insert(e) {
                return Err(Error::parse(line, format!("duplicate candidate {e}")));
            }
            out.push(e);
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn format_cand(edges: &[TemporalEdge]) -> String {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let mut out = String::new();
    for e in sorted {
        let _ = writeln!(out, "E {} {} {}", e.u(), e.v(), e.t());
    }
    out
}

/// JSON mirror of the `.tg` format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub schema: u32,
    pub n: usize,
    pub lifespan: Time,
    pub edges: Vec<TemporalEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl From<&TemporalGraph> for GraphJson {
    fn from(g: &TemporalGraph) -> Self {
        GraphJson {
            schema: crate::SCHEMA_VERSION,
            n: g.n(),
            lifespan: g.lifespan(),
            edges: g.edges().to_vec(),
            names: g.names().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<GraphJson> for TemporalGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let mut g = TemporalGraph::new(j.n, j.edges)?.with_lifespan(j.lifespan)?;
        if let Some(names) = j.names {
            g = g.with_names(names)?;
        }
        Ok(g)
    }
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let mut recs = records(text);
    let (line, header) = recs
        .next()
        .ok_or_else(|| Error::parse(0, "missing `<rows> <cols>` header"))?;
    if header.len() != 2 {
        return Err(Error::parse(line, "expected `<rows> <cols>`"));
    }
    let rows: usize = number(line, header[0], "row count")?;
    let cols: usize = number(line, header[1], "column count")?;
    let mut data = Vec::with_capacity(rows);
    for (line, fields) in recs {
        if fields.len() != cols {
            return Err(Error::parse(
                line,
                format!("expected {cols} entries, found {}", fields.len()),
            ));
        }
        let row = fields
            .iter()
            .map(|f| match *f {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::parse(line, format!("expected 0 or 1, found `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        data.push(row);
    }
    if data.len() != rows {
        return Err(Error::parse(
            line,
            format!("header declares {rows} rows, found {}", data.len()),
        ));
    }
    BinaryMatrix::from_rows(data)
}

pub fn format_matrix(m: &BinaryMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<&str> = (0..m.cols())
            .map(|j| if m.get(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
