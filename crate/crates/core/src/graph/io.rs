//! Text formats: the edge-list format and graph6.
//!
//! Edge-list:
//!
//! ```text
//! # comment
//! vertices: v1 v2 v3 v4
//! edge: v1 v2
//! edge: v2 v3
//! edge: v3 v4
//! ```
//!
//! graph6 lines decode to graphs on `v1, ..., vn` with the standard
//! upper-triangle, column-major bit order.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the edge-list format. Line numbers in errors are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertices: Option<(usize, Vec<String>)> = None;
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(':').ok_or_else(|| {
            parse_err(
                lineno,
                format!("expected `vertices:` or `edge:`, got {line:?}"),
            )
        })?;
        match key.trim() {
            "vertices" => {
                if vertices.is_some() {
                    return Err(parse_err(lineno, "duplicate `vertices:` line"));
                }
                if !edges.is_empty() {
                    return Err(parse_err(lineno, "`vertices:` must precede all edges"));
                }
                vertices = Some((lineno, rest.split_whitespace().map(str::to_owned).collect()));
            }
            "edge" => {
                if vertices.is_none() {
                    return Err(parse_err(lineno, "`edge:` before `vertices:`"));
                }
                let ends: Vec<&str> = rest.split_whitespace().collect();
                match ends.as_slice() {
                    [a, b] => edges.push((lineno, (*a).to_owned(), (*b).to_owned())),
                    _ => {
                        return Err(parse_err(
                            lineno,
                            format!("edge needs exactly two endpoints, got {}", ends.len()),
                        ))
                    }
                }
            }
            other => return Err(parse_err(lineno, format!("unknown key `{other}`"))),
        }
    }
    let (vline, vertices) = vertices.ok_or_else(|| parse_err(1, "missing `vertices:` line"))?;
    // Validate edges one at a time so errors point at the offending line.
    let mut g = Graph::new(vertices, Vec::<(&str, &str)>::new())
        .map_err(|e| parse_err(vline, e.to_string()))?;
    for (lineno, a, b) in &edges {
        let (ia, ib) = (
            g.index_of(a)
                .map_err(|e| parse_err(*lineno, e.to_string()))?,
            g.index_of(b)
                .map_err(|e| parse_err(*lineno, e.to_string()))?,
        );
        if ia == ib {
            return Err(parse_err(*lineno, format!("self-loop at `{a}`")));
        }
        g.adj[ia].insert(ib);
        g.adj[ib].insert(ia);
    }
    Ok(g)
}

/// Serializes to the edge-list format, edges in index order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::from("vertices:");
    for l in g.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for e in g.edges() {
        let (a, b) = e.endpoints();
        let _ = writeln!(out, "edge: {} {}", g.label(a), g.label(b));
    }
    out
}

/// Decodes one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_graph6_at(line, 1)
}

fn parse_graph6_at(line: &str, lineno: usize) -> Result<Graph> {
    let line = line.trim();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(lineno, format!("invalid graph6 byte {b:#04x}")));
    }
    let (n, body) = match bytes {
        [] => return Err(parse_err(lineno, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(lineno, "truncated graph6 size"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(lineno, "truncated graph6 size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((*b - 63) as usize, rest),
    };
    if n > super::MAX_VERTICES {
        return Err(parse_err(
            lineno,
            format!("{n} vertices exceeds the supported maximum"),
        ));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(parse_err(
            lineno,
            format!(
                "graph6 body has {} bytes, expected {need} for {n} vertices",
                body.len()
            ),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
            k += 1;
        }
    }
    Graph::new(labels.clone(), edges).map_err(|e| parse_err(lineno, e.to_string()))
}

/// Encodes a graph as graph6. Vertex `i` of the encoding is the graph's
/// `i`-th vertex in label order.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Parses either a single edge-list document or a sequence of graph6 lines.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let is_edge_list = text
        .lines()
        .map(strip_comment)
        .any(|l| l.starts_with("vertices") && l.contains(':'));
    if is_edge_list {
        return Ok(vec![parse_edge_list(text)?]);
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| !strip_comment(l).is_empty())
        .map(|(i, l)| parse_graph6_at(strip_comment(l), i + 1))
        .collect()
}
