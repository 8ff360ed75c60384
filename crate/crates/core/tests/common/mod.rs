//! Independent reference implementations used only by tests. None of these
//! call into the solver code paths they are compared against.

#![allow(dead_code)]

use defalliance::ilp::IlpProblem;
use defalliance::{protection_threshold, Graph, Vertex};

/// All-pairs hop distances, `usize::MAX` when unreachable.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &u in g.neighbors(v) {
            d[v][u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != inf && d[k][j] != inf && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Closed-majority check written straight from the definition.
pub fn is_alliance(g: &Graph, set: &[Vertex]) -> bool {
    !set.is_empty()
        && set.iter().all(|&v| {
            !g.is_forbidden(v) && {
                let inside = set.iter().filter(|&&u| u == v || g.has_edge(u, v)).count();
                2 * inside > g.degree(v)
            }
        })
}

/// Minimum alliance size by plain subset enumeration over all `2^n` sets.
pub fn naive_min_alliance(g: &Graph) -> Option<usize> {
    let n = g.n();
    assert!(n <= 16);
    (1u32..1 << n)
        .filter(|mask| {
            let set: Vec<Vertex> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            is_alliance(g, &set)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Every simple cycle through `v`, as vertex lists starting at `v`.
pub fn simple_cycles_through(g: &Graph, v: Vertex) -> Vec<Vec<Vertex>> {
    fn walk(g: &Graph, root: Vertex, path: &mut Vec<Vertex>, on: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for &u in g.neighbors(last) {
            if u == root && path.len() >= 3 {
                // Each cycle appears in both directions; keep one.
                if path[1] < last {
                    out.push(path.clone());
                }
            } else if !on[u] {
                on[u] = true;
                path.push(u);
                walk(g, root, path, on, out);
                path.pop();
                on[u] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[v] = true;
    let mut out = Vec::new();
    walk(g, v, &mut vec![v], &mut on, &mut out);
    out
}

/// Every simple cycle of the graph, each listed once.
pub fn all_simple_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    // A cycle is reported through its smallest vertex only.
    g.vertices()
        .flat_map(|v| simple_cycles_through(g, v).into_iter().filter(move |c| c.iter().all(|&x| x >= v)))
        .collect()
}

/// Every simple path from `v` to a vertex of `targets` (other than `v`),
/// not passing through a target before its end.
pub fn simple_paths_to(g: &Graph, v: Vertex, targets: &[Vertex]) -> Vec<Vec<Vertex>> {
    fn walk(g: &Graph, targets: &[Vertex], path: &mut Vec<Vertex>, on: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let last = *path.last().unwrap();
        for &u in g.neighbors(last) {
            if on[u] {
                continue;
            }
            path.push(u);
            if targets.contains(&u) {
                out.push(path.clone());
            } else {
                on[u] = true;
                walk(g, targets, path, on, out);
                on[u] = false;
            }
            path.pop();
        }
    }
    let mut on = vec![false; g.n()];
    on[v] = true;
    let mut out = Vec::new();
    walk(g, targets, &mut vec![v], &mut on, &mut out);
    out
}

/// Fewest vertices in the union of two paths from `v` to distinct targets
/// sharing only `v`.
pub fn min_path_pair_size(g: &Graph, v: Vertex, targets: &[Vertex]) -> Option<usize> {
    let targets: Vec<Vertex> = targets.iter().copied().filter(|&t| t != v).collect();
    let paths = simple_paths_to(g, v, &targets);
    let mut best = None;
    for (i, a) in paths.iter().enumerate() {
        for b in &paths[i + 1..] {
            if a[1..].iter().any(|x| b[1..].contains(x)) {
                continue;
            }
            let size = a.len() + b.len() - 1;
            if best.is_none_or(|s| size < s) {
                best = Some(size);
            }
        }
    }
    best
}

/// Optimum of a bounded ILP by enumerating the whole box.
pub fn grid_search(prob: &IlpProblem) -> Option<i64> {
    let p = prob.var_count();
    let mut x: Vec<i64> = prob.bounds.iter().map(|b| b.0).collect();
    let mut best: Option<i64> = None;
    loop {
        if prob.is_feasible(&x) {
            let v = prob.evaluate(&x);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        let mut j = 0;
        loop {
            if j == p {
                return best;
            }
            if x[j] < prob.bounds[j].1 {
                x[j] += 1;
                break;
            }
            x[j] = prob.bounds[j].0;
            j += 1;
        }
    }
}

fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Vec<Vertex>> {
    (0u32..1 << n)
        .filter(move |m| m.count_ones() as usize == size)
        .map(move |m| (0..n).filter(|v| m >> v & 1 == 1).collect())
}

fn remainder(n: usize, removed: &[Vertex]) -> Vec<Vertex> {
    (0..n).filter(|v| !removed.contains(v)).collect()
}

/// Smallest `|D|` leaving a clique, by subset enumeration.
pub fn min_clique_modulator_size(g: &Graph) -> usize {
    (0..=g.n())
        .find(|&k| subsets_of_size(g.n(), k).any(|d| g.is_clique(&remainder(g.n(), &d))))
        .unwrap()
}

/// Twin-cover condition checked from the definition: every remainder
/// component is a clique whose vertices see the same cover vertices.
pub fn satisfies_twin_cover(g: &Graph, cover: &[Vertex]) -> bool {
    let rest = remainder(g.n(), cover);
    let sig = |v: Vertex| -> Vec<Vertex> { cover.iter().copied().filter(|&t| g.has_edge(v, t)).collect() };
    for &a in &rest {
        for &b in &rest {
            if a < b && g.has_edge(a, b) {
                if sig(a) != sig(b) {
                    return false;
                }
                // Adjacent remainder vertices must share all remainder neighbours.
                for &c in &rest {
                    if c != a && c != b && g.has_edge(a, c) != g.has_edge(b, c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn min_twin_cover_size(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| subsets_of_size(g.n(), k).any(|t| satisfies_twin_cover(g, &t))).unwrap()
}

/// All dominating sets of size at most `k`.
pub fn dominating_sets_up_to(g: &Graph, k: usize) -> Vec<Vec<Vertex>> {
    (1..=k)
        .flat_map(|size| subsets_of_size(g.n(), size))
        .filter(|s| {
            g.vertices().all(|v| s.contains(&v) || g.neighbors(v).iter().any(|u| s.contains(u)))
        })
        .collect()
}

pub fn threshold_of(g: &Graph, v: Vertex) -> usize {
    protection_threshold(g.degree(v))
}
