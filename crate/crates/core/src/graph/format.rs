//! Text interchange formats: a line-oriented edge list and graph6.
//!
//! Edge list:
//!
//! ```text
//! # comment lines start with '#'; blank lines are skipped
//! n 3
//! 0 1
//! 1 2
//! ```
//!
//! graph6 (single-byte size field only, so at most 62 vertices): the first
//! byte is `n + 63`, followed by the upper triangle of the adjacency matrix in
//! column order `x(0,1) x(0,2) x(1,2) x(0,3) ...`, packed six bits per byte
//! (most significant first, zero padded) and offset by 63.

use super::{Graph, GraphError};

const GRAPH6_MAX_N: usize = 62;

fn edge_list_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::EdgeList {
        line,
        message: message.into(),
    }
}

/// Parses the edge-list format. Line numbers in errors are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                let count = match fields.as_slice() {
                    ["n", count] => count
                        .parse::<usize>()
                        .map_err(|_| edge_list_error(line_no, format!("bad vertex count {count:?}")))?,
                    _ => return Err(edge_list_error(line_no, "expected header \"n <count>\"")),
                };
                if count == 0 {
                    return Err(edge_list_error(line_no, "graph must have at least one vertex"));
                }
                n = Some(count);
            }
            Some(count) => {
                let [u, v] = fields.as_slice() else {
                    return Err(edge_list_error(line_no, "expected \"u v\""));
                };
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| edge_list_error(line_no, format!("bad vertex id {s:?}")))
                };
                let (u, v) = (parse(u)?, parse(v)?);
                for w in [u, v] {
                    if w >= count {
                        return Err(edge_list_error(
                            line_no,
                            format!("vertex {w} out of range 0..{count}"),
                        ));
                    }
                }
                if u == v {
                    return Err(edge_list_error(line_no, format!("loop edge at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or_else(|| edge_list_error(text.lines().count().max(1), "missing header \"n <count>\""))?;
    Graph::from_edges(n, edges)
}

/// Writes the edge-list format, one edge per line in lexicographic order.
pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn graph6_error(position: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        position,
        message: message.into(),
    }
}

/// Decodes one graph6 line (surrounding whitespace ignored).
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let bytes = line.trim().as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(graph6_error(0, "empty input"));
    };
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(graph6_error(pos, format!("byte {b} outside [63, 126]")));
        }
    }
    if first == 126 {
        return Err(graph6_error(0, format!("more than {GRAPH6_MAX_N} vertices is unsupported")));
    }
    let n = usize::from(first - 63);
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let bits = n * (n - 1) / 2;
    let needed = bits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < needed {
        return Err(graph6_error(
            bytes.len(),
            format!("truncated: {n} vertices need {needed} data bytes, found {}", data.len()),
        ));
    }
    if data.len() > needed {
        return Err(graph6_error(1 + needed, "trailing bytes after adjacency data"));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Encodes a graph with at most 62 vertices as graph6.
pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_N {
        return Err(GraphError::TooLarge(n, GRAPH6_MAX_N));
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
