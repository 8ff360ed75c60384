//! DIMACS edge format with a forbidden-vertex extension.
//!
//! ```text
//! c optional comment
//! p edge <n> <m>
//! e <u> <v>        1-indexed, exactly m of these
//! f <u>            marks u as forbidden; not counted in m
//! ```
//!
//! Ids are 1-indexed on disk and 0-indexed in memory.

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: record before the header")]
    MissingHeader { line: usize },
    #[error("no header line")]
    Empty,
    #[error("line {line}: malformed record")]
    MalformedLine { line: usize },
    #[error("line {line}: vertex {index} outside 1..={n}")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// A parsed file: the graph plus its comment lines without the `c ` prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsFile {
    pub graph: Graph,
    pub comments: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<Graph, DimacsError> {
    Ok(parse_dimacs_file(text)?.graph)
}

pub fn parse_dimacs_file(text: &str) -> Result<DimacsFile, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut forbidden = Vec::new();
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let tag = tokens.next().expect("non-empty line");
        if tag == "c" {
            comments.push(trimmed[1..].trim_start().to_string());
            continue;
        }
        let fields: Vec<&str> = tokens.collect();
        if tag == "p" {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line });
            }
            let [kind, n, m] = fields[..] else {
                return Err(DimacsError::MalformedHeader { line });
            };
            let (Ok(n), Ok(m)) = (n.parse(), m.parse()) else {
                return Err(DimacsError::MalformedHeader { line });
            };
            if kind != "edge" {
                return Err(DimacsError::MalformedHeader { line });
            }
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(DimacsError::MissingHeader { line });
        };
        let ids: Vec<usize> = fields
            .iter()
            .map(|f| f.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| DimacsError::MalformedLine { line })?;
        let vertex = |index: usize| -> Result<Vertex, DimacsError> {
            if index == 0 || index > n {
                Err(DimacsError::IndexOutOfRange { line, index, n })
            } else {
                Ok(index - 1)
            }
        };
        match (tag, ids.as_slice()) {
            ("e", &[a, b]) => {
                let (u, v) = (vertex(a)?, vertex(b)?);
                if u == v {
                    return Err(DimacsError::SelfLoop { line, vertex: a });
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(DimacsError::DuplicateEdge { line, u: a, v: b });
                }
                edges.push((u, v));
            }
            ("f", &[a]) => forbidden.push(vertex(a)?),
            _ => return Err(DimacsError::MalformedLine { line }),
        }
    }
    let (n, m) = header.ok_or(DimacsError::Empty)?;
    if edges.len() != m {
        return Err(DimacsError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    let graph = Graph::new(n, edges, forbidden).expect("parser already rejected invalid edges");
    Ok(DimacsFile { graph, comments })
}

/// Canonical text: comments, header, sorted edges, then forbidden flags.
pub fn write_dimacs(g: &Graph) -> String {
    write_dimacs_with_comments(g, &[])
}

pub fn write_dimacs_with_comments(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("c ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    for v in g.forbidden() {
        out.push_str(&format!("f {}\n", v + 1));
    }
    out
}
