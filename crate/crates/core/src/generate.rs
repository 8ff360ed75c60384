//! Seeded test-corpus generators and exhaustive small-graph enumeration.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

const CUBIC_ATTEMPTS: usize = 10_000;

/// Describes a family of random graphs. Text form is `kind:key=value,...`,
/// for example `cubic:n=8` or `connected:n=12,dmax=5,extra=6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Random spanning tree under a degree cap plus up to `extra_edges`
    /// random chords that respect the cap.
    Connected { n: usize, max_degree: usize, extra_edges: usize },
    /// Connected 3-regular graph from the pairing model.
    Cubic { n: usize },
    /// A clique of `clique` vertices plus `outside` vertices attached at
    /// random; distance to clique is at most `outside`.
    CliquePlusAttachments { clique: usize, outside: usize },
    /// `cover` modulator vertices plus `cliques` cliques of size
    /// `1..=max_clique`, each joined uniformly to a subset of the modulator.
    TwinCoverStructured { cover: usize, cliques: usize, max_clique: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("infeasible generator spec: {0}")]
    Infeasible(String),
    #[error("cannot parse generator spec `{0}`")]
    Parse(String),
    #[error("no simple connected pairing found after {0} attempts")]
    Exhausted(usize),
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorSpec::Connected { n, max_degree, extra_edges } => {
                write!(f, "connected:n={n},dmax={max_degree},extra={extra_edges}")
            }
            GeneratorSpec::Cubic { n } => write!(f, "cubic:n={n}"),
            GeneratorSpec::CliquePlusAttachments { clique, outside } => {
                write!(f, "clique-attach:clique={clique},outside={outside}")
            }
            GeneratorSpec::TwinCoverStructured { cover, cliques, max_clique } => {
                write!(f, "twin-cover:cover={cover},cliques={cliques},zmax={max_clique}")
            }
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenerateError::Parse(s.to_string());
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut fields = std::collections::BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            fields.insert(k.trim(), v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(bad);
        let known: &[&str] = match kind {
            "connected" => &["n", "dmax", "extra"],
            "cubic" => &["n"],
            "clique-attach" => &["clique", "outside"],
            "twin-cover" => &["cover", "cliques", "zmax"],
            _ => return Err(bad()),
        };
        if fields.keys().any(|k| !known.contains(k)) {
            return Err(bad());
        }
        Ok(match kind {
            "connected" => GeneratorSpec::Connected {
                n: get("n")?,
                max_degree: get("dmax")?,
                extra_edges: fields.get("extra").copied().unwrap_or(0),
            },
            "cubic" => GeneratorSpec::Cubic { n: get("n")? },
            "clique-attach" => GeneratorSpec::CliquePlusAttachments {
                clique: get("clique")?,
                outside: get("outside")?,
            },
            _ => GeneratorSpec::TwinCoverStructured {
                cover: get("cover")?,
                cliques: get("cliques")?,
                max_clique: get("zmax")?,
            },
        })
    }
}

/// Deterministic for a fixed `(spec, seed)`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        GeneratorSpec::Connected { n, max_degree, extra_edges } => {
            connected(&mut rng, n, max_degree, extra_edges)
        }
        GeneratorSpec::Cubic { n } => cubic(&mut rng, n),
        GeneratorSpec::CliquePlusAttachments { clique, outside } => {
            clique_plus_attachments(&mut rng, clique, outside)
        }
        GeneratorSpec::TwinCoverStructured { cover, cliques, max_clique } => {
            twin_cover_structured(&mut rng, cover, cliques, max_clique)
        }
    }
}

fn build(n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generators emit simple graphs")
}

fn connected(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_degree: usize,
    extra_edges: usize,
) -> Result<Graph, GenerateError> {
    if n == 0 {
        return Err(GenerateError::Infeasible("connected graph needs n >= 1".into()));
    }
    let needed = match n {
        1 => 0,
        2 => 1,
        _ => 2,
    };
    if max_degree < needed {
        return Err(GenerateError::Infeasible(format!(
            "connected graph on {n} vertices needs max degree >= {needed}"
        )));
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut degree = vec![0usize; n];
    let mut edges = HashSet::new();
    for i in 1..n {
        let open: Vec<Vertex> = order[..i].iter().copied().filter(|&u| degree[u] < max_degree).collect();
        let u = *open.choose(rng).expect("a tree under a cap >= 2 always has a leaf");
        let v = order[i];
        degree[u] += 1;
        degree[v] += 1;
        edges.insert((u.min(v), u.max(v)));
    }
    for _ in 0..extra_edges {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let e = (a.min(b), a.max(b));
        if a != b && degree[a] < max_degree && degree[b] < max_degree && edges.insert(e) {
            degree[a] += 1;
            degree[b] += 1;
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(build(n, edges))
}

fn cubic(rng: &mut ChaCha8Rng, n: usize) -> Result<Graph, GenerateError> {
    if n % 2 == 1 {
        return Err(GenerateError::Infeasible(format!("cubic graph needs even n, got {n}")));
    }
    if n < 4 {
        return Err(GenerateError::Infeasible(format!("cubic graph needs n >= 4, got {n}")));
    }
    let mut points: Vec<Vertex> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..CUBIC_ATTEMPTS {
        points.shuffle(rng);
        let mut edges = HashSet::new();
        for pair in points.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !edges.insert((a.min(b), a.max(b))) {
                continue 'attempt;
            }
        }
        let mut edges: Vec<_> = edges.into_iter().collect();
        edges.sort_unstable();
        let g = build(n, edges);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenerateError::Exhausted(CUBIC_ATTEMPTS))
}

/// Applies a random relabelling so planted structure does not sit on the
/// smallest ids.
fn relabel(rng: &mut ChaCha8Rng, n: usize, edges: Vec<(Vertex, Vertex)>) -> Graph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    build(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect())
}

fn clique_plus_attachments(
    rng: &mut ChaCha8Rng,
    clique: usize,
    outside: usize,
) -> Result<Graph, GenerateError> {
    if clique == 0 {
        return Err(GenerateError::Infeasible("clique must be non-empty".into()));
    }
    let n = clique + outside;
    let mut edges: Vec<(Vertex, Vertex)> =
        (0..clique).flat_map(|a| (a + 1..clique).map(move |b| (a, b))).collect();
    for o in clique..n {
        let mut attached = false;
        for c in 0..clique {
            if rng.gen_bool(0.5) {
                edges.push((c, o));
                attached = true;
            }
        }
        if !attached {
            edges.push((rng.gen_range(0..clique), o));
        }
        for p in o + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((o, p));
            }
        }
    }
    Ok(relabel(rng, n, edges))
}

fn twin_cover_structured(
    rng: &mut ChaCha8Rng,
    cover: usize,
    cliques: usize,
    max_clique: usize,
) -> Result<Graph, GenerateError> {
    if max_clique == 0 && cliques > 0 {
        return Err(GenerateError::Infeasible("clique size cap must be positive".into()));
    }
    if cover > 16 {
        return Err(GenerateError::Infeasible("cover larger than 16".into()));
    }
    let mut edges = Vec::new();
    for a in 0..cover {
        for b in a + 1..cover {
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            }
        }
    }
    // A few signatures shared by many cliques, so clique sets hold several
    // cliques of the same size.
    let pool: Vec<u32> = if cover == 0 {
        vec![0]
    } else {
        let full = (1u32 << cover) - 1;
        (0..cover.min(3)).map(|_| rng.gen_range(1..=full)).collect()
    };
    let mut next = cover;
    for _ in 0..cliques {
        let size = rng.gen_range(1..=max_clique);
        let sig = *pool.choose(rng).expect("pool is non-empty");
        let members: Vec<Vertex> = (next..next + size).collect();
        next += size;
        for (i, &a) in members.iter().enumerate() {
            edges.extend(members[i + 1..].iter().map(|&b| (a, b)));
            edges.extend((0..cover).filter(|t| sig >> t & 1 == 1).map(|t| (t, a)));
        }
    }
    Ok(relabel(rng, next, edges))
}

/// One representative per isomorphism class of graphs on `n` vertices
/// (`n <= 8`), in a deterministic order.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    let mut reps: Vec<Vec<u8>> = vec![Vec::new()];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &reps {
            for mask in 0u32..(1 << (size - 1)) {
                let mut adj = base.clone();
                adj.push(mask as u8);
                for (v, row) in adj.iter_mut().enumerate().take(size - 1) {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                let code = canonical_code(&adj);
                if seen.insert(code) {
                    next.push(decode(code, size));
                }
            }
        }
        reps = next;
    }
    reps.iter()
        .map(|adj| {
            let edges = (0..n).flat_map(|a| {
                let row = adj[a];
                (a + 1..n).filter(move |&b| row >> b & 1 == 1).map(move |b| (a, b))
            });
            build(n, edges.collect())
        })
        .collect()
}

/// Minimum upper-triangle code over all orderings that list vertices by
/// non-increasing degree. Restricting to degree-sorted orderings keeps the
/// form canonical since degree order is isomorphism-invariant.
fn canonical_code(adj: &[u8]) -> u64 {
    let n = adj.len();
    let degree: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(degree[v]));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || degree[order[i]] != degree[order[start]] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_blocks(adj, &mut order, &blocks, 0, &mut best);
    best
}

fn permute_blocks(adj: &[u8], order: &mut Vec<usize>, blocks: &[(usize, usize)], b: usize, best: &mut u64) {
    if b == blocks.len() {
        *best = (*best).min(encode(adj, order));
        return;
    }
    let (lo, hi) = blocks[b];
    permute_range(adj, order, blocks, b, lo, hi, best);
}

fn permute_range(
    adj: &[u8],
    order: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    k: usize,
    hi: usize,
    best: &mut u64,
) {
    if k + 1 >= hi {
        permute_blocks(adj, order, blocks, b + 1, best);
        return;
    }
    for i in k..hi {
        order.swap(k, i);
        permute_range(adj, order, blocks, b, k + 1, hi, best);
        order.swap(k, i);
    }
}

fn encode(adj: &[u8], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
        }
    }
    code
}

fn decode(code: u64, n: usize) -> Vec<u8> {
    let mut adj = vec![0u8; n];
    let mut bit = n * (n - 1) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}
