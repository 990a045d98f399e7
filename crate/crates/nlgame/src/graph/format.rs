//! Text formats for graphs: a native labeled edge-list format and a
//! DIMACS-like format.
//!
//! ```text
//! graph
//! vertices: v1 v2 v3
//! edges:
//! v1 v2
//! v2 v3
//! partition:          # optional clique partition
//! q0: v1 v2
//! q1: v3
//! end
//! ```
//!
//! The DIMACS-like form uses `p edge N M` followed by 1-based `e u v`
//! lines; vertices are named by their indices and the partition is not
//! representable.

use crate::graph::{Graph, GraphError};
use crate::textio::{parse_usize, Cursor, FormatError};

pub fn write_graph(graph: &Graph) -> String {
    let mut out = String::from("graph\n");
    out.push_str(&format!("vertices: {}\n", graph.vertices().join(" ")));
    let looped = graph.looped_vertices();
    if !looped.is_empty() {
        let labels: Vec<&str> = looped.iter().map(|&v| graph.vertices()[v].as_str()).collect();
        out.push_str(&format!("loops: {}\n", labels.join(" ")));
    }
    out.push_str("edges:\n");
    for (u, v) in graph.edges() {
        out.push_str(&format!("{} {}\n", graph.vertices()[u], graph.vertices()[v]));
    }
    if let Some(blocks) = graph.clique_partition() {
        out.push_str("partition:\n");
        for (i, block) in blocks.iter().enumerate() {
            let members: Vec<&str> = block.iter().map(|&v| graph.vertices()[v].as_str()).collect();
            out.push_str(&format!("b{i}: {}\n", members.join(" ")));
        }
    }
    out.push_str("end\n");
    out
}

pub fn write_graph_dimacs(graph: &Graph) -> String {
    let loops = graph.looped_vertices();
    let mut out = format!("p edge {} {}\n", graph.n_vertices(), graph.n_edges() + loops.len());
    for u in loops {
        out.push_str(&format!("e {} {}\n", u + 1, u + 1));
    }
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses either format, detected by the first meaningful line.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some("graph") => parse_graph_native(text),
        Some(l) if l == "c" || l.starts_with("c ") || l.starts_with("p ") => {
            parse_graph_dimacs(text)
        }
        Some(l) => Err(FormatError::at(1, format!("unrecognized graph header {l:?}"))),
        None => Err(FormatError::at(1, "empty graph file")),
    }
}

fn vertex_index(vertices: &[String], token: &str, line: usize) -> Result<usize, FormatError> {
    vertices
        .iter()
        .position(|v| v == token)
        .ok_or_else(|| FormatError::at(line, format!("unknown vertex label {token:?}")))
}

fn parse_graph_native(text: &str) -> Result<Graph, FormatError> {
    let mut cur = Cursor::new(text);
    cur.expect_literal("graph")?;
    let (vline, tokens) = cur.expect_keyed("vertices")?;
    if tokens.is_empty() {
        return Err(FormatError::at(vline, "vertex list is empty"));
    }
    let vertices: Vec<String> = tokens.into_iter().map(String::from).collect();
    let mut looped = Vec::new();
    if let Some((_, content)) = cur.peek() {
        if content.starts_with("loops:") {
            let (lline, tokens) = cur.expect_keyed("loops")?;
            for t in tokens {
                looped.push(vertex_index(&vertices, t, lline)?);
            }
        }
    }
    let (eline, rest) = cur.expect_keyed("edges")?;
    if !rest.is_empty() {
        return Err(FormatError::at(eline, "edges belong on their own lines"));
    }
    let mut edges = Vec::new();
    let mut partition: Option<Vec<Vec<usize>>> = None;
    loop {
        let (line, content) = cur
            .peek()
            .ok_or_else(|| FormatError::at(cur.eof_line(), "unterminated graph (missing \"end\")"))?;
        if content == "end" {
            cur.next_line();
            break;
        }
        if content == "partition:" {
            cur.next_line();
            let mut blocks = Vec::new();
            loop {
                let (bline, bcontent) = cur.peek().ok_or_else(|| {
                    FormatError::at(cur.eof_line(), "unterminated partition section")
                })?;
                if bcontent == "end" {
                    cur.next_line();
                    break;
                }
                cur.next_line();
                let mut toks = bcontent.split_whitespace();
                let head = toks.next().unwrap_or("");
                if !head.ends_with(':') {
                    return Err(FormatError::at(
                        bline,
                        format!("partition blocks start with a label and colon, found {head:?}"),
                    ));
                }
                let block: Result<Vec<usize>, FormatError> =
                    toks.map(|t| vertex_index(&vertices, t, bline)).collect();
                blocks.push(block?);
            }
            partition = Some(blocks);
            break;
        }
        cur.next_line();
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(FormatError::at(line, format!("edges need 2 fields, found {}", tokens.len())));
        }
        let u = vertex_index(&vertices, tokens[0], line)?;
        let v = vertex_index(&vertices, tokens[1], line)?;
        edges.push((u, v));
    }
    cur.done()?;
    let graph = Graph::new(vertices, &edges)
        .and_then(|g| g.with_loops(&looped))
        .map_err(|e| FormatError::at(1, e))?;
    match partition {
        Some(blocks) => graph.with_clique_partition(blocks).map_err(|e| FormatError::at(1, e)),
        None => Ok(graph),
    }
}

fn parse_graph_dimacs(text: &str) -> Result<Graph, FormatError> {
    let mut n_vertices = None;
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content == "c" || content.starts_with("c ") || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if n_vertices.is_some() {
                    return Err(FormatError::at(line, "duplicate problem line"));
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(FormatError::at(line, "problem line must be \"p edge N M\""));
                }
                n_vertices = Some(parse_usize(tokens[2], line)?);
            }
            "e" => {
                if tokens.len() != 3 {
                    return Err(FormatError::at(line, "edge lines must be \"e u v\""));
                }
                let n = n_vertices
                    .ok_or_else(|| FormatError::at(line, "edge before problem line"))?;
                let u = parse_usize(tokens[1], line)?;
                let v = parse_usize(tokens[2], line)?;
                if u < 1 || u > n || v < 1 || v > n {
                    return Err(FormatError::at(line, format!("edge endpoint out of range 1..={n}")));
                }
                if u == v {
                    loops.push(u - 1);
                } else {
                    edges.push((u - 1, v - 1));
                }
            }
            other => {
                return Err(FormatError::at(line, format!("unrecognized DIMACS line kind {other:?}")));
            }
        }
    }
    let n = n_vertices.ok_or_else(|| FormatError::at(1, "missing problem line"))?;
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    Graph::new(vertices, &edges)
        .and_then(|g| g.with_loops(&loops))
        .map_err(|e| FormatError::at(1, e))
}

impl From<GraphError> for FormatError {
    fn from(e: GraphError) -> Self {
        FormatError::at(1, e)
    }
}
