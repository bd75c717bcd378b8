//! Edge-list text format.
//!
//! ```text
//! n m
//! u v      (m lines, 0 <= u, v < n, u != v)
//! ```
//!
//! Duplicate and reversed lines are accepted and collapse to one undirected
//! edge, so `m` counts lines rather than distinct edges. Blank lines after
//! the last edge are ignored. The writer emits each edge once as `u v` with
//! `u < v`, in lexicographic order, so `m` equals the edge count.

use super::{Graph, DEFAULT_MAX_VERTICES};
use crate::error::{Error, Result};
use std::fmt::Write as _;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut field = |name: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_error(line_no, format!("missing {name}")))?;
        tok.parse::<usize>()
            .map_err(|_| parse_error(line_no, format!("{name} `{tok}` is not a non-negative integer")))
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if it.next().is_some() {
        return Err(parse_error(line_no, "expected exactly two fields"));
    }
    Ok((a, b))
}

/// Parses an edge-list document into a [`Graph`].
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty document; expected header `n m`"))?;
    let (n, m) = parse_pair(header_no, header)?;
    if n > DEFAULT_MAX_VERTICES {
        return Err(Error::TooLarge {
            n,
            max: DEFAULT_MAX_VERTICES,
        });
    }
    let mut g = Graph::new(n);
    let mut seen = 0usize;
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        if line.is_empty() {
            continue;
        }
        if seen == m {
            return Err(parse_error(line_no, format!("more than the declared {m} edge lines")));
        }
        let (u, v) = parse_pair(line_no, line)?;
        if u >= n || v >= n {
            return Err(parse_error(line_no, format!("vertex id out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_error(line_no, format!("self-loop on vertex {u}")));
        }
        g.add_edge(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(parse_error(
            last_line,
            format!("declared {m} edge lines but found {seen}"),
        ));
    }
    Ok(g)
}

/// Serializes a graph in the edge-list format.
pub fn write_graph(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::with_capacity(16 + edges.len() * 12);
    let _ = writeln!(out, "{} {}", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
