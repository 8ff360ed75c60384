//! Cycle and disjoint-path primitives.
//!
//! Every search here minimizes the number of vertices used and breaks ties
//! toward the lexicographically smallest sorted vertex set. Both criteria are
//! folded into one exact integer weight per vertex, `2^n - 2^(n-1-v)`: a set
//! with fewer vertices always weighs less, and among equal-size sets the one
//! whose smallest differing element is smaller weighs less.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::graph::{Graph, Vertex, UNREACHABLE};

pub(crate) struct LexWeights {
    weights: Vec<BigUint>,
}

impl LexWeights {
    pub(crate) fn new(n: usize) -> Self {
        let unit = BigUint::one() << n;
        let weights = (0..n)
            .map(|v| &unit - (BigUint::one() << (n - 1 - v)))
            .collect();
        LexWeights { weights }
    }

    pub(crate) fn of(&self, v: Vertex) -> &BigUint {
        &self.weights[v]
    }
}

/// A simple cycle listed in traversal order, starting at its root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sorted_vertices(&self) -> Vec<Vertex> {
        let mut out = self.vertices.clone();
        out.sort_unstable();
        out
    }
}

/// Two paths leaving a common root that share no vertex besides it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPair {
    pub endpoint_x: Vertex,
    pub endpoint_y: Vertex,
    pub path_x: Vec<Vertex>,
    pub path_y: Vec<Vertex>,
    pub total_vertices: usize,
}

impl PathPair {
    pub fn root(&self) -> Vertex {
        self.path_x[0]
    }

    /// Sorted union of both paths.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.path_x.iter().chain(&self.path_y[1..]).copied().collect();
        out.sort_unstable();
        out
    }
}

/// Minimum-weight path from `start` to any vertex accepted by `is_target`,
/// never entering vertices rejected by `allowed`. The weight of a path is the
/// sum of its vertex weights, `start` included.
pub(crate) fn lex_shortest_path(
    g: &Graph,
    weights: &LexWeights,
    start: Vertex,
    allowed: impl Fn(Vertex) -> bool,
    is_target: impl Fn(Vertex) -> bool,
) -> Option<(BigUint, Vec<Vertex>)> {
    let n = g.n();
    let mut best: Vec<Option<BigUint>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    best[start] = Some(weights.of(start).clone());
    heap.push(Reverse((weights.of(start).clone(), start)));
    while let Some(Reverse((w, x))) = heap.pop() {
        if done[x] {
            continue;
        }
        done[x] = true;
        if x != start && is_target(x) {
            let mut path = vec![x];
            let mut cur = x;
            while cur != start {
                cur = pred[cur];
                path.push(cur);
            }
            path.reverse();
            return Some((w, path));
        }
        for &y in g.neighbors(x) {
            if done[y] || !allowed(y) {
                continue;
            }
            let cand = &w + weights.of(y);
            if best[y].as_ref().is_none_or(|b| cand < *b) {
                best[y] = Some(cand.clone());
                pred[y] = x;
                heap.push(Reverse((cand, y)));
            }
        }
    }
    None
}

/// Shortest simple cycle through `v`, or `None` if `v` lies on no cycle.
///
/// A cycle through `v` leaves by one neighbour `a` and returns by another
/// neighbour `b`, so it is `v` plus an `a`–`b` path in `G - v`.
pub fn shortest_cycle_through(g: &Graph, v: Vertex) -> Option<Cycle> {
    let weights = LexWeights::new(g.n());
    shortest_cycle_through_with(g, &weights, v)
}

pub(crate) fn shortest_cycle_through_with(
    g: &Graph,
    weights: &LexWeights,
    v: Vertex,
) -> Option<Cycle> {
    let nbrs = g.neighbors(v);
    let mut best: Option<(BigUint, Vec<Vertex>)> = None;
    for &a in nbrs {
        let found = lex_shortest_path(
            g,
            weights,
            a,
            |x| x != v,
            |x| x != a && nbrs.binary_search(&x).is_ok(),
        );
        if let Some((w, path)) = found {
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, path));
            }
        }
    }
    best.map(|(_, path)| {
        let mut vertices = Vec::with_capacity(path.len() + 1);
        vertices.push(v);
        vertices.extend(path);
        Cycle { vertices }
    })
}

/// Girth via breadth-first search from every vertex; `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = UNREACHABLE;
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(UNREACHABLE);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == UNREACHABLE {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != UNREACHABLE).then_some(best)
}

struct Arc {
    to: usize,
    cap: i32,
    cost: BigInt,
}

/// Residual network for a tiny successive-shortest-path min-cost flow.
struct FlowNet {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cost: BigInt) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap: 1, cost: cost.clone() });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
    }

    /// Pushes one unit along a cheapest residual path; false if none exists.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let nodes = self.out.len();
        let mut dist: Vec<Option<BigInt>> = vec![None; nodes];
        let mut via = vec![usize::MAX; nodes];
        let mut queued = vec![false; nodes];
        let mut queue = VecDeque::new();
        dist[source] = Some(BigInt::zero());
        queue.push_back(source);
        queued[source] = true;
        while let Some(x) = queue.pop_front() {
            queued[x] = false;
            let dx = dist[x].clone().expect("queued nodes have a distance");
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap == 0 {
                    continue;
                }
                let cand = &dx + &arc.cost;
                if dist[arc.to].as_ref().is_none_or(|d| cand < *d) {
                    dist[arc.to] = Some(cand);
                    via[arc.to] = a;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if dist[sink].is_none() {
            return false;
        }
        let mut node = sink;
        while node != source {
            let a = via[node];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            node = self.arcs[a ^ 1].to;
        }
        true
    }

    fn flow_successor(&self, node: usize) -> Option<usize> {
        self.out[node]
            .iter()
            .find(|&&a| a % 2 == 0 && self.arcs[a].cap == 0)
            .map(|&a| self.arcs[a].to)
    }
}

/// Cheapest pair of internally vertex-disjoint paths from `v` to two distinct
/// members of `targets`, minimizing the size of the union of both paths.
///
/// Vertices are split into in/out halves joined by a unit-capacity arc that
/// carries the vertex weight; two units of flow leave `v` and enter a
/// super-sink through the targets.
pub fn min_disjoint_path_pair(g: &Graph, v: Vertex, targets: &[Vertex]) -> Option<PathPair> {
    let weights = LexWeights::new(g.n());
    min_disjoint_path_pair_with(g, &weights, v, targets)
}

pub(crate) fn min_disjoint_path_pair_with(
    g: &Graph,
    weights: &LexWeights,
    v: Vertex,
    targets: &[Vertex],
) -> Option<PathPair> {
    assert!(!targets.contains(&v), "root may not be a target");
    if targets.len() < 2 {
        return None;
    }
    let n = g.n();
    let vin = |x: Vertex| 2 * x;
    let vout = |x: Vertex| 2 * x + 1;
    let sink = 2 * n;
    let mut net = FlowNet::new(2 * n + 1);
    for x in 0..n {
        if x != v {
            net.add(vin(x), vout(x), BigInt::from(weights.of(x).clone()));
        }
    }
    for &(a, b) in g.edges() {
        if b != v {
            net.add(vout(a), vin(b), BigInt::zero());
        }
        if a != v {
            net.add(vout(b), vin(a), BigInt::zero());
        }
    }
    for &t in targets {
        net.add(vout(t), sink, BigInt::zero());
    }
    if !(net.augment(vout(v), sink) && net.augment(vout(v), sink)) {
        return None;
    }

    let mut paths = Vec::with_capacity(2);
    for &a in &net.out[vout(v)] {
        if a % 2 != 0 || net.arcs[a].cap != 0 {
            continue;
        }
        let mut path = vec![v];
        let mut node = net.arcs[a].to;
        loop {
            let x = node / 2;
            path.push(x);
            let next = net
                .flow_successor(vout(x))
                .expect("flow is conserved at every split vertex");
            if next == sink {
                break;
            }
            node = next;
        }
        paths.push(path);
    }
    debug_assert_eq!(paths.len(), 2);
    paths.sort_by_key(|p| *p.last().unwrap());
    let path_y = paths.pop()?;
    let path_x = paths.pop()?;
    Some(PathPair {
        endpoint_x: *path_x.last().unwrap(),
        endpoint_y: *path_y.last().unwrap(),
        total_vertices: path_x.len() + path_y.len() - 1,
        path_x,
        path_y,
    })
}
