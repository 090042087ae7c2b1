//! Edge-list text format.
//!
//! One edge per line as `u v`; lines starting with `#` are comments; an
//! optional `vertices: u1 u2 ...` line declares vertices explicitly so that
//! isolated ones are representable.

use std::fmt::Write as _;

use super::{Graph, Vertex};
use crate::error::GraphError;

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            for tok in rest.split_whitespace() {
                vertices.push(parse_id(tok, lineno)?);
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let (a, b) = match (toks.next(), toks.next(), toks.next()) {
            (Some(a), Some(b), None) => (parse_id(a, lineno)?, parse_id(b, lineno)?),
            _ => {
                return Err(GraphError::Parse {
                    line: lineno,
                    message: format!("expected two vertex ids, got {line:?}"),
                })
            }
        };
        edges.push((a, b));
    }
    Graph::with_vertices(vertices, edges)
}

/// Renders `g` in the edge-list format. The `vertices:` header is emitted only
/// when the graph has isolated vertices.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if g.isolated_vertices().next().is_some() {
        out.push_str("vertices:");
        for v in g.vertices() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_id(tok: &str, line: usize) -> Result<Vertex, GraphError> {
    tok.parse().map_err(|_| GraphError::Parse { line, message: format!("bad vertex id {tok:?}") })
}
