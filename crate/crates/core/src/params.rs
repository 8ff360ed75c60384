//! Structural parameters: distance to clique, twin cover, and the vertex
//! partitions the parameterized solvers work on.
//!
//! Both parameters are vertex covers of an auxiliary graph. `V \ D` is a
//! clique exactly when `D` covers every non-adjacent pair. `V \ T` is a
//! disjoint union of cliques with uniform adjacency into `T` exactly when `T`
//! covers every edge whose endpoints have different closed neighbourhoods:
//! two adjacent remainder vertices must be closed twins, and closed twinship
//! is an equivalence, so each remainder component is a clique of twins.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("vertices outside the modulator do not induce a clique")]
    RemainderNotClique,
    #[error("set is not a twin cover")]
    InvalidTwinCover,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionMode {
    /// The remainder is one clique split into twin classes.
    CliqueRemainder,
    /// The remainder is a union of cliques grouped into clique sets.
    CliquesRemainder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinClass {
    pub id: usize,
    pub members: Vec<Vertex>,
    /// Neighbours of every member inside the modulator.
    pub signature: Vec<Vertex>,
    /// Clique size to cliques of that size; empty in clique-remainder mode.
    pub cliques_by_size: BTreeMap<usize, Vec<Vec<Vertex>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    pub modulator: Vec<Vertex>,
    pub classes: Vec<TwinClass>,
    pub mode: PartitionMode,
}

impl TwinPartition {
    /// Largest clique outside the modulator (0 when there is none).
    pub fn max_clique_size(&self) -> usize {
        match self.mode {
            PartitionMode::CliqueRemainder => self.classes.iter().map(|c| c.members.len()).sum(),
            PartitionMode::CliquesRemainder => self
                .classes
                .iter()
                .filter_map(|c| c.cliques_by_size.keys().next_back().copied())
                .max()
                .unwrap_or(0),
        }
    }
}

/// True if `V \ set` induces a clique.
pub fn is_clique_modulator(g: &Graph, set: &[Vertex]) -> bool {
    let rest = complement(g, set);
    g.is_clique(&rest)
}

/// True if `V \ set` is a disjoint union of cliques whose members share their
/// adjacency into `set`.
pub fn is_twin_cover(g: &Graph, set: &[Vertex]) -> bool {
    let inside = membership(g, set);
    remainder_components(g, &inside).iter().all(|comp| {
        g.is_clique(comp) && {
            let sig = signature(g, comp[0], &inside);
            comp.iter().all(|&v| signature(g, v, &inside) == sig)
        }
    })
}

/// Lexicographically smallest minimum set `D` with `|D| <= k_max` whose
/// removal leaves a clique, or `None` if the minimum exceeds `k_max`.
pub fn distance_to_clique_set(g: &Graph, k_max: usize) -> Option<Vec<Vertex>> {
    let non_edges: Vec<(Vertex, Vertex)> = g
        .vertices()
        .flat_map(|a| (a + 1..g.n()).map(move |b| (a, b)))
        .filter(|&(a, b)| !g.has_edge(a, b))
        .collect();
    min_vertex_cover_lex(g.n(), &non_edges, k_max)
}

/// Lexicographically smallest minimum twin cover with at most `k_max`
/// vertices, or `None` if the minimum exceeds `k_max`.
pub fn twin_cover_set(g: &Graph, k_max: usize) -> Option<Vec<Vertex>> {
    let closed: Vec<Vec<Vertex>> = g.vertices().map(|v| g.closed_neighborhood(v)).collect();
    let split_edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| closed[a] != closed[b])
        .collect();
    let cover = min_vertex_cover_lex(g.n(), &split_edges, k_max)?;
    debug_assert!(is_twin_cover(g, &cover));
    Some(cover)
}

/// Exhaustive branching on an uncovered edge. At the smallest feasible budget
/// every minimum cover is reached, so the lexicographic minimum is exact.
fn min_vertex_cover_lex(n: usize, edges: &[(Vertex, Vertex)], k_max: usize) -> Option<Vec<Vertex>> {
    fn branch(
        edges: &[(Vertex, Vertex)],
        chosen: &mut Vec<bool>,
        budget: usize,
        best: &mut Option<Vec<Vertex>>,
    ) {
        let Some(&(a, b)) = edges.iter().find(|&&(a, b)| !chosen[a] && !chosen[b]) else {
            let cover: Vec<Vertex> = (0..chosen.len()).filter(|&v| chosen[v]).collect();
            if best.as_ref().is_none_or(|cur| cover < *cur) {
                *best = Some(cover);
            }
            return;
        };
        if budget == 0 {
            return;
        }
        for v in [a, b] {
            chosen[v] = true;
            branch(edges, chosen, budget - 1, best);
            chosen[v] = false;
        }
    }
    (0..=k_max.min(n)).find_map(|budget| {
        let mut best = None;
        branch(edges, &mut vec![false; n], budget, &mut best);
        best
    })
}

/// Twin classes of a clique remainder, keyed by modulator adjacency.
pub fn partition_twin_classes(g: &Graph, modulator: &[Vertex]) -> Result<TwinPartition, ParamError> {
    check_range(g, modulator)?;
    if !is_clique_modulator(g, modulator) {
        return Err(ParamError::RemainderNotClique);
    }
    let inside = membership(g, modulator);
    let mut groups: BTreeMap<Vec<Vertex>, Vec<Vertex>> = BTreeMap::new();
    for v in g.vertices().filter(|&v| !inside[v]) {
        groups.entry(signature(g, v, &inside)).or_default().push(v);
    }
    let classes = order_classes(groups.into_iter().map(|(sig, members)| (sig, members, BTreeMap::new())));
    Ok(TwinPartition {
        modulator: sorted(modulator),
        classes,
        mode: PartitionMode::CliqueRemainder,
    })
}

/// Clique sets of a twin-cover remainder with per-size clique inventories.
pub fn partition_clique_sets(g: &Graph, cover: &[Vertex]) -> Result<TwinPartition, ParamError> {
    check_range(g, cover)?;
    if !is_twin_cover(g, cover) {
        return Err(ParamError::InvalidTwinCover);
    }
    let inside = membership(g, cover);
    let mut groups: BTreeMap<Vec<Vertex>, Vec<Vec<Vertex>>> = BTreeMap::new();
    for comp in remainder_components(g, &inside) {
        groups.entry(signature(g, comp[0], &inside)).or_default().push(comp);
    }
    let classes = order_classes(groups.into_iter().map(|(sig, cliques)| {
        let mut members: Vec<Vertex> = cliques.iter().flatten().copied().collect();
        members.sort_unstable();
        let mut by_size: BTreeMap<usize, Vec<Vec<Vertex>>> = BTreeMap::new();
        for clique in cliques {
            by_size.entry(clique.len()).or_default().push(clique);
        }
        for list in by_size.values_mut() {
            list.sort();
        }
        (sig, members, by_size)
    }));
    Ok(TwinPartition {
        modulator: sorted(cover),
        classes,
        mode: PartitionMode::CliquesRemainder,
    })
}

type ClassParts = (Vec<Vertex>, Vec<Vertex>, BTreeMap<usize, Vec<Vec<Vertex>>>);

/// Classes are numbered in order of their smallest member.
fn order_classes(parts: impl Iterator<Item = ClassParts>) -> Vec<TwinClass> {
    let mut parts: Vec<ClassParts> = parts.collect();
    parts.sort_by_key(|(_, members, _)| members[0]);
    parts
        .into_iter()
        .enumerate()
        .map(|(id, (signature, members, cliques_by_size))| TwinClass {
            id,
            members,
            signature,
            cliques_by_size,
        })
        .collect()
}

fn check_range(g: &Graph, set: &[Vertex]) -> Result<(), ParamError> {
    match set.iter().find(|&&v| v >= g.n()) {
        Some(&v) => Err(ParamError::VertexOutOfRange(v)),
        None => Ok(()),
    }
}

fn sorted(set: &[Vertex]) -> Vec<Vertex> {
    let mut out = set.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

fn membership(g: &Graph, set: &[Vertex]) -> Vec<bool> {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    inside
}

fn complement(g: &Graph, set: &[Vertex]) -> Vec<Vertex> {
    let inside = membership(g, set);
    g.vertices().filter(|&v| !inside[v]).collect()
}

fn signature(g: &Graph, v: Vertex, inside: &[bool]) -> Vec<Vertex> {
    g.neighbors(v).iter().copied().filter(|&u| inside[u]).collect()
}

/// Connected components of `G - set`, each sorted, in order of smallest vertex.
fn remainder_components(g: &Graph, inside: &[bool]) -> Vec<Vec<Vertex>> {
    let mut seen = inside.to_vec();
    let mut out = Vec::new();
    for start in g.vertices() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn k5_minus_edge() -> Graph {
        let edges = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .filter(|&e| e != (1, 3));
        Graph::from_edges(5, edges).unwrap()
    }

    #[test]
    fn distance_to_clique() {
        assert_eq!(distance_to_clique_set(&complete(5), 0), Some(vec![]));
        assert_eq!(distance_to_clique_set(&k5_minus_edge(), 3), Some(vec![1]));
        assert_eq!(distance_to_clique_set(&k5_minus_edge(), 0), None);
        let d = distance_to_clique_set(&path(4), 4).unwrap();
        assert_eq!(d, vec![0, 1]);
        assert!(is_clique_modulator(&path(4), &d));
    }

    #[test]
    fn twin_cover() {
        assert_eq!(twin_cover_set(&star(4), 3), Some(vec![0]));
        assert_eq!(twin_cover_set(&complete(5), 3), Some(vec![]));
        let c6 = twin_cover_set(&cycle(6), 6).unwrap();
        assert_eq!(c6.len(), 3);
        assert!(is_twin_cover(&cycle(6), &c6));
        assert_eq!(twin_cover_set(&cycle(6), 2), None);
        assert!(!is_twin_cover(&path(3), &[]));
    }

    #[test]
    fn twin_classes() {
        let p = partition_twin_classes(&complete(4), &[]).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.classes[0].members, vec![0, 1, 2, 3]);
        assert!(p.classes[0].signature.is_empty());

        // Triangle 0-1-2 plus apex 3 adjacent to 0.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let p = partition_twin_classes(&g, &[3]).unwrap();
        assert_eq!(p.classes.len(), 2);
        assert_eq!((p.classes[0].members.clone(), p.classes[0].signature.clone()), (vec![0], vec![3]));
        assert_eq!((p.classes[1].members.clone(), p.classes[1].signature.clone()), (vec![1, 2], vec![]));
        assert_eq!(partition_twin_classes(&g, &[]), Err(ParamError::RemainderNotClique));
    }

    #[test]
    fn clique_sets() {
        let p = partition_clique_sets(&star(4), &[0]).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.classes[0].cliques_by_size[&1].len(), 4);
        assert_eq!(p.max_clique_size(), 1);

        // Two triangles, both fully joined to vertex 0.
        let mut edges = vec![(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)];
        edges.extend((1..=6).map(|v| (0, v)));
        let g = Graph::from_edges(7, edges).unwrap();
        let p = partition_clique_sets(&g, &[0]).unwrap();
        assert_eq!(p.classes.len(), 1);
        assert_eq!(p.classes[0].cliques_by_size[&3], vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(p.max_clique_size(), 3);
        assert_eq!(partition_clique_sets(&path(3), &[]), Err(ParamError::InvalidTwinCover));
    }
}
