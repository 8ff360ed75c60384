//! File and argument parsing. External vertex ids are 1-indexed.

use std::path::Path;

use defalliance::{parse_dimacs_file, DimacsFile, Graph, Vertex};

use crate::CliError;

pub fn read_graph_file(path: &Path) -> Result<DimacsFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    parse_dimacs_file(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    Ok(read_graph_file(path)?.graph)
}

/// A vertex set given inline (`5,6,7` or `{5, 6, 7}`) or as a file of ids.
pub fn read_set(arg: &str, n: usize) -> Result<Vec<Vertex>, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{arg}: {e}")))?
    } else {
        arg.to_string()
    };
    parse_set(&text, n)
}

pub fn parse_set(text: &str, n: usize) -> Result<Vec<Vertex>, CliError> {
    let mut out = Vec::new();
    for token in text
        .lines()
        .filter(|l| !l.trim_start().starts_with('c'))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace() || c == '{' || c == '}'))
        .filter(|t| !t.is_empty())
    {
        let id: usize = token.parse().map_err(|_| CliError::Invalid(format!("bad vertex id `{token}`")))?;
        if id == 0 || id > n {
            return Err(CliError::Invalid(format!("vertex {id} outside 1..={n}")));
        }
        out.push(id - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn external(set: &[Vertex]) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

/// Comment lines recording the source of a reduction instance.
pub fn reduction_comments(source: &Graph, k: usize) -> Vec<String> {
    let mut out = vec![format!("reduction-source {} {}", source.n(), k)];
    out.extend(source.edges().iter().map(|&(u, v)| format!("reduction-edge {} {}", u + 1, v + 1)));
    out
}

/// Inverse of [`reduction_comments`].
pub fn parse_reduction_comments(comments: &[String]) -> Result<(Graph, usize), CliError> {
    let bad = |what: &str| CliError::Invalid(format!("instance file: {what}"));
    let mut header = None;
    let mut edges = Vec::new();
    for c in comments {
        let fields: Vec<&str> = c.split_whitespace().collect();
        let nums = |f: &[&str]| -> Result<Vec<usize>, CliError> {
            f.iter().map(|t| t.parse().map_err(|_| bad("malformed reduction comment"))).collect()
        };
        match fields.first() {
            Some(&"reduction-source") => {
                let v = nums(&fields[1..])?;
                let [n, k] = v[..] else { return Err(bad("malformed reduction-source line")) };
                header = Some((n, k));
            }
            Some(&"reduction-edge") => {
                let v = nums(&fields[1..])?;
                let [a, b] = v[..] else { return Err(bad("malformed reduction-edge line")) };
                if a == 0 || b == 0 {
                    return Err(bad("reduction-edge ids are 1-indexed"));
                }
                edges.push((a - 1, b - 1));
            }
            _ => {}
        }
    }
    let (n, k) = header.ok_or_else(|| bad("missing reduction-source line"))?;
    let source = Graph::from_edges(n, edges).map_err(|e| bad(&e.to_string()))?;
    Ok((source, k))
}
