//! Reading and writing plumbing graphs.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! v <id> <weight>
//! e <id> <id>
//! ```
//!
//! JSON format: `{"vertices":[{"id":0,"weight":-1},...],"edges":[[0,1],...]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

/// Parses either format, choosing JSON when the first non-blank character
/// is `{`.
pub fn parse_graph(input: &str) -> Result<PlumbingGraph> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn parse_text(input: &str) -> Result<PlumbingGraph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: String| Error::input(format!("line {}: {msg}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["v", id, weight] => {
                let id = id.parse::<u64>().map_err(|_| at(format!("bad vertex id '{id}'")))?;
                let weight =
                    weight.parse::<i64>().map_err(|_| at(format!("bad weight '{weight}'")))?;
                vertices.push((id, weight));
            }
            ["e", a, b] => {
                let a = a.parse::<u64>().map_err(|_| at(format!("bad vertex id '{a}'")))?;
                let b = b.parse::<u64>().map_err(|_| at(format!("bad vertex id '{b}'")))?;
                edges.push((a, b));
            }
            _ => return Err(at(format!("expected 'v <id> <weight>' or 'e <id> <id>', got '{line}'"))),
        }
    }
    PlumbingGraph::new(&vertices, &edges)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonVertex {
    id: u64,
    weight: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<[u64; 2]>,
}

pub fn parse_json(input: &str) -> Result<PlumbingGraph> {
    let g: JsonGraph =
        serde_json::from_str(input).map_err(|e| Error::input(format!("graph JSON: {e}")))?;
    let vertices: Vec<_> = g.vertices.iter().map(|v| (v.id, v.weight)).collect();
    let edges: Vec<_> = g.edges.iter().map(|&[a, b]| (a, b)).collect();
    PlumbingGraph::new(&vertices, &edges)
}

pub fn to_text(graph: &PlumbingGraph) -> String {
    let mut out = String::new();
    for v in 0..graph.len() {
        let _ = writeln!(out, "v {} {}", graph.id(v), graph.weight(v));
    }
    for &(a, b) in graph.edges() {
        let _ = writeln!(out, "e {} {}", graph.id(a), graph.id(b));
    }
    out
}

pub fn to_json_value(graph: &PlumbingGraph) -> serde_json::Value {
    let g = JsonGraph {
        vertices: (0..graph.len())
            .map(|v| JsonVertex { id: graph.id(v), weight: graph.weight(v) })
            .collect(),
        edges: graph.edges().iter().map(|&(a, b)| [graph.id(a), graph.id(b)]).collect(),
    };
    serde_json::to_value(g).expect("graph serializes")
}

pub fn to_json(graph: &PlumbingGraph) -> String {
    to_json_value(graph).to_string()
}

pub fn to_dot(graph: &PlumbingGraph) -> String {
    let mut out = String::from("graph plumbing {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..graph.len() {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", graph.id(v), graph.weight(v));
    }
    for &(a, b) in graph.edges() {
        let _ = writeln!(out, "  v{} -- v{};", graph.id(a), graph.id(b));
    }
    out.push_str("}\n");
    out
}
