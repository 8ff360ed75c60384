//! Immutable simple undirected graphs with optional forbidden-vertex flags.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

/// Vertex ids are dense and 0-based.
pub type Vertex = usize;

/// Distance sentinel for vertices that cannot be reached.
pub const UNREACHABLE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// A simple undirected graph.
///
/// Forbidden vertices are ordinary vertices (they count toward the degrees of
/// their neighbours) that may never be part of an alliance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    forbidden: Vec<bool>,
}

impl Graph {
    /// Builds and validates a graph. Edges are stored normalized as `(min, max)`
    /// and sorted.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
        forbidden: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut flags = vec![false; n];
        for v in forbidden {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            flags[v] = true;
        }
        Ok(Graph {
            n,
            edges: seen.into_iter().collect(),
            adj,
            forbidden: flags,
        })
    }

    /// Graph without forbidden vertices.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        Self::new(n, edges, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted open neighbourhood.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_forbidden(&self, v: Vertex) -> bool {
        self.forbidden[v]
    }

    pub fn has_forbidden(&self) -> bool {
        self.forbidden.iter().any(|&f| f)
    }

    /// Forbidden vertex ids in increasing order.
    pub fn forbidden(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.forbidden
            .iter()
            .enumerate()
            .filter_map(|(v, &f)| f.then_some(v))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// True for the empty graph and for graphs with a single component.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || distances_from(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    /// True if every pair of distinct vertices in `set` is adjacent.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// Closed neighbourhood as a sorted vector.
    pub fn closed_neighborhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = self.adj[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }
}

/// Unweighted single-source distances; unreachable vertices get [`UNREACHABLE`].
pub fn distances_from(g: &Graph, v: Vertex) -> Vec<usize> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[v] = 0;
    queue.push_back(v);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHABLE {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}
