//! Edge-list text format.
//!
//! ```text
//! # comment
//! n 5
//! 0 1
//! 1 2
//! ```
//!
//! One edge per line as two whitespace-separated vertex tokens. The optional
//! `n <count>` header (first non-comment line) declares the vertex count so
//! isolated vertices survive. When every token is a plain decimal index the
//! tokens are used as vertex indices directly; otherwise vertices are
//! numbered in order of first appearance and the tokens become vertex names,
//! with any extra header-declared vertices named `~<index>`.
//!
//! Parsing a serialized graph yields the identical graph for every graph
//! that was itself parsed, and for every graph with index names.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::graph::{Graph, GraphError};

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line: line_no,
                message: format!("expected two vertex tokens, found {}", tokens.len()),
            });
        }
        if !seen_content && tokens[0] == "n" {
            let count = tokens[1].parse::<usize>().map_err(|_| GraphError::Parse {
                line: line_no,
                message: format!("invalid vertex count {:?}", tokens[1]),
            })?;
            declared = Some(count);
            seen_content = true;
            continue;
        }
        seen_content = true;
        pairs.push((line_no, tokens[0], tokens[1]));
    }

    let numeric = pairs.iter().all(|&(_, a, b)| is_plain_index(a) && is_plain_index(b));
    let parse_err = |line: usize, message: String| GraphError::Parse { line, message };

    if numeric {
        let mut edges = Vec::with_capacity(pairs.len());
        let mut top = 0usize;
        for &(line, a, b) in &pairs {
            let u: usize = a.parse().map_err(|_| parse_err(line, format!("bad index {a:?}")))?;
            let v: usize = b.parse().map_err(|_| parse_err(line, format!("bad index {b:?}")))?;
            top = top.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        let n = match declared {
            Some(d) if d < top => {
                return Err(parse_err(0, format!("header declares {d} vertices but index {} occurs", top - 1)))
            }
            Some(d) => d,
            None => top,
        };
        return Graph::new(n, &edges).map_err(|e| locate(e, &pairs));
    }

    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for &(_, a, b) in &pairs {
        let [u, v] = [a, b].map(|t| {
            *index.entry(t).or_insert_with(|| {
                names.push(t.to_string());
                names.len() - 1
            })
        });
        edges.push((u, v));
    }
    let distinct = names.len();
    if let Some(d) = declared {
        if d < distinct {
            return Err(parse_err(0, format!("header declares {d} vertices but {distinct} names occur")));
        }
        names.extend((distinct..d).map(|i| format!("~{i}")));
    }
    Graph::with_names(names.len(), &edges, names).map_err(|e| locate(e, &pairs))
}

fn is_plain_index(token: &str) -> bool {
    !token.is_empty() && token.bytes().all(|b| b.is_ascii_digit()) && (token == "0" || !token.starts_with('0'))
}

// Attach the offending line to self-loop / duplicate diagnostics.
fn locate(err: GraphError, pairs: &[(usize, &str, &str)]) -> GraphError {
    let line = match &err {
        GraphError::SelfLoop(name) => pairs.iter().find(|p| p.1 == name && p.2 == name).map(|p| p.0),
        GraphError::DuplicateEdge(a, b) => {
            pairs.iter().filter(|p| (p.1 == a && p.2 == b) || (p.1 == b && p.2 == a)).nth(1).map(|p| p.0)
        }
        _ => None,
    };
    match line {
        Some(line) => GraphError::Parse { line, message: err.to_string() },
        None => err,
    }
}

/// Serializes with vertex names.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", g.name(u), g.name(v)).unwrap();
    }
    out
}

/// Serializes with bare vertex indices, ignoring names.
pub fn write_edge_list_indexed(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
