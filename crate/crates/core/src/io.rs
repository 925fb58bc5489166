//! Edge-list text format, the interchange format for the whole toolkit.
//!
//! First line `n m`, then `m` lines `u v` with 0-based endpoints separated
//! by whitespace. Lines starting with `#` and blank lines are ignored.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> EdgeListError {
    EdgeListError::Syntax { line, message: message.into() }
}

/// Parses the edge-list format; errors name the offending 1-based line.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| syntax(1, "missing header line"))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(header_line, "expected vertex count"))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(header_line, "expected edge count"))?;
    if parts.next().is_some() {
        return Err(syntax(header_line, "trailing tokens after header"));
    }

    let mut g = Graph::empty(n).map_err(|e| syntax(header_line, e.to_string()))?;
    let mut seen = 0usize;
    for (line, text) in lines {
        if seen == m {
            return Err(syntax(line, format!("more than {m} edge lines")));
        }
        let mut parts = text.split_whitespace();
        let u: u32 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(line, "expected vertex id"))?;
        let v: u32 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax(line, "expected second vertex id"))?;
        if parts.next().is_some() {
            return Err(syntax(line, "trailing tokens after edge"));
        }
        g.add_edge_checked(u, v).map_err(|e: GraphError| syntax(line, e.to_string()))?;
        seen += 1;
    }
    if seen < m {
        return Err(syntax(0, format!("expected {m} edges, found {seen}")));
    }
    Ok(g)
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph, EdgeListError> {
    let text = fs::read_to_string(path)?;
    parse_edge_list(&text)
}

/// Renders a graph in the edge-list format, edges sorted ascending.
pub fn format_edge_list(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = format!("{} {}\n", n, g.edge_count());
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if g.has_edge(u, v) {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let text = format_edge_list(&g);
        assert!(text.starts_with("5 5\n"));
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let g = parse_edge_list("# header comment\n3 2\n\n0 1\n# inner\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(err.to_string().contains("expected 2 edges, found 1"));

        let err = parse_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3:"));

        let err = parse_edge_list("2 1\n0 0\n").unwrap_err();
        assert!(err.to_string().contains("self-loop"));

        let err = parse_edge_list("3 1\n0 1\n1 2\n").unwrap_err();
        assert!(err.to_string().contains("more than 1"));
    }
}
