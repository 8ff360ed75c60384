//! Minimum defensive alliance on graphs of maximum degree at most five.
//!
//! One subproblem per vertex `v` asks for a small alliance containing `v`.
//! With `W` the vertices of degree at most three:
//!
//! * degree 0 or 1: `{v}` alone is an alliance;
//! * degree 2 or 3: a shortest path from `v` to the nearest other vertex of
//!   `W`, or the shortest cycle through `v`;
//! * degree 4 or 5: two internally disjoint paths from `v` into `W`, or the
//!   shortest cycle through `v`.
//!
//! Every vertex of a cycle has three closed neighbours on it, which meets the
//! threshold of any degree up to five; path interiors likewise, and path ends
//! in `W` need only two. The global answer is the best subproblem.

use serde::Serialize;
use thiserror::Error;

use crate::alliance::{verify_alliance, AllianceSolution};
use crate::graph::{Graph, Vertex};
use crate::paths::{lex_shortest_path, min_disjoint_path_pair_with, shortest_cycle_through_with, LexWeights};

pub const MAX_DEGREE: usize = 5;

/// Shape of a subproblem witness. The declaration order is the tie-break
/// order between equal-size candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateKind {
    Singleton,
    Path,
    Cycle,
    PathPair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubproblemResult {
    pub root: Vertex,
    /// `None` when no candidate shape exists for this root.
    pub best_size: Option<usize>,
    /// Sorted; empty when `best_size` is `None`.
    pub witness: Vec<Vertex>,
    pub kind: Option<CandidateKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LowDegError {
    #[error("maximum degree {0} exceeds {MAX_DEGREE}")]
    DegreeBound(usize),
    #[error("graph has forbidden vertices")]
    ForbiddenVertices,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("witness {witness:?} for root {root} failed verification")]
    Unverified { root: Vertex, witness: Vec<Vertex> },
}

fn check_input(g: &Graph) -> Result<(), LowDegError> {
    if g.max_degree() > MAX_DEGREE {
        return Err(LowDegError::DegreeBound(g.max_degree()));
    }
    if g.has_forbidden() {
        return Err(LowDegError::ForbiddenVertices);
    }
    Ok(())
}

/// Smallest candidate alliance containing `v`.
pub fn solve_subproblem(g: &Graph, v: Vertex) -> Result<SubproblemResult, LowDegError> {
    check_input(g)?;
    let weights = LexWeights::new(g.n());
    let result = subproblem(g, &weights, v);
    if result.best_size.is_some() && !verify_alliance(g, &result.witness).valid {
        return Err(LowDegError::Unverified { root: v, witness: result.witness });
    }
    Ok(result)
}

fn subproblem(g: &Graph, weights: &LexWeights, v: Vertex) -> SubproblemResult {
    let d = g.degree(v);
    if d <= 1 {
        return SubproblemResult {
            root: v,
            best_size: Some(1),
            witness: vec![v],
            kind: Some(CandidateKind::Singleton),
        };
    }
    let low = |x: Vertex| x != v && g.degree(x) <= 3;
    let mut candidates: Vec<(CandidateKind, Vec<Vertex>)> = Vec::new();
    if d <= 3 {
        if let Some((_, path)) = lex_shortest_path(g, weights, v, |_| true, low) {
            candidates.push((CandidateKind::Path, path));
        }
    } else {
        let targets: Vec<Vertex> = g.vertices().filter(|&x| low(x)).collect();
        if let Some(pair) = min_disjoint_path_pair_with(g, weights, v, &targets) {
            candidates.push((CandidateKind::PathPair, pair.vertex_set()));
        }
    }
    if let Some(cycle) = shortest_cycle_through_with(g, weights, v) {
        candidates.push((CandidateKind::Cycle, cycle.vertices));
    }
    let best = candidates
        .into_iter()
        .map(|(kind, mut set)| {
            set.sort_unstable();
            (set.len(), kind, set)
        })
        .min();
    match best {
        Some((size, kind, witness)) => SubproblemResult {
            root: v,
            best_size: Some(size),
            witness,
            kind: Some(kind),
        },
        None => SubproblemResult { root: v, best_size: None, witness: Vec::new(), kind: None },
    }
}

/// Minimum defensive alliance of a graph with maximum degree at most five.
pub fn solve_min_alliance_lowdeg(g: &Graph) -> Result<AllianceSolution, LowDegError> {
    Ok(solve_min_alliance_lowdeg_detailed(g)?.0)
}

/// Like [`solve_min_alliance_lowdeg`], also returning the winning subproblem.
pub fn solve_min_alliance_lowdeg_detailed(
    g: &Graph,
) -> Result<(AllianceSolution, SubproblemResult), LowDegError> {
    check_input(g)?;
    let weights = LexWeights::new(g.n());
    let best = g
        .vertices()
        .map(|v| subproblem(g, &weights, v))
        .filter(|r| r.best_size.is_some())
        .min_by(|a, b| {
            (a.best_size, a.kind, &a.witness).cmp(&(b.best_size, b.kind, &b.witness))
        })
        .ok_or(LowDegError::EmptyGraph)?;
    let solution = verify_alliance(g, &best.witness);
    if !solution.valid {
        return Err(LowDegError::Unverified { root: best.root, witness: best.witness });
    }
    Ok((solution, best))
}
