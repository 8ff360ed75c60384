//! Reduction from dominating set on cubic graphs to defensive alliance on
//! graphs of maximum degree six, plus the gadget-size arithmetic behind it.
//!
//! Every source vertex `i` becomes thirteen target vertices: four triangles
//! `(v_i^j, u_i^j, w_i^j)` for `j = 0..3` and a selector `s_i`. Chain edges
//! tie the triangles together, `s_i` is joined to `v_i^0` and to one free copy
//! `v_k^j` per source neighbour `k`, and every gadget vertex is padded to its
//! final degree with dedicated forbidden vertices.
//!
//! Layout: for source vertex `i` the block starts at `13 i`; `v^j`, `u^j`,
//! `w^j` sit at offsets `j`, `4 + j`, `8 + j` and `s_i` at offset 12.
//! Forbidden vertices follow from `13 n` onwards.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;
use thiserror::Error;

use crate::alliance::{verify_alliance, AllianceSolution};
use crate::graph::{Graph, Vertex};

const BLOCK: usize = 13;
const FORBIDDEN_V: usize = 2;
const FORBIDDEN_UW: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("source graph is not cubic (vertex {0})")]
    NonCubic(Vertex),
    #[error("source graph is not connected")]
    Disconnected,
    #[error("source graph has forbidden vertices")]
    ForbiddenInSource,
    #[error("k = {k} outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("set does not dominate the source graph")]
    NotDominating,
    #[error("set of size {size} exceeds the budget {budget}")]
    Oversized { size: usize, budget: usize },
    #[error("set is not a defensive alliance of the target")]
    InvalidAlliance,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("extracted set {0:?} is not a dominating set of size at most k")]
    ExtractionFailed(Vec<Vertex>),
}

/// Target ids of the thirteen vertices standing for one source vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexBlock {
    pub v: [Vertex; 4],
    pub u: [Vertex; 4],
    pub w: [Vertex; 4],
    pub s: Vertex,
}

impl VertexBlock {
    fn at(i: usize) -> Self {
        let base = BLOCK * i;
        VertexBlock {
            v: [base, base + 1, base + 2, base + 3],
            u: [base + 4, base + 5, base + 6, base + 7],
            w: [base + 8, base + 9, base + 10, base + 11],
            s: base + 12,
        }
    }

    /// The nine chain vertices `u^j, v^j, w^j` for `j = 1..3`.
    pub fn chain(&self) -> [Vertex; 9] {
        [
            self.v[1], self.v[2], self.v[3], self.u[1], self.u[2], self.u[3], self.w[1], self.w[2], self.w[3],
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionInstance {
    #[serde(skip)]
    pub source: Graph,
    pub k: usize,
    #[serde(skip)]
    pub target: Graph,
    pub k_prime: usize,
    pub vertex_map: Vec<VertexBlock>,
    pub forbidden_count: usize,
}

fn check_cubic(g: &Graph) -> Result<(), ReductionError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != 3) {
        return Err(ReductionError::NonCubic(v));
    }
    if g.n() == 0 {
        return Err(ReductionError::NonCubic(0));
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    if g.has_forbidden() {
        return Err(ReductionError::ForbiddenInSource);
    }
    Ok(())
}

pub fn build_reduction(g: &Graph, k: usize) -> Result<ReductionInstance, ReductionError> {
    check_cubic(g)?;
    let n = g.n();
    if k == 0 || k > n {
        return Err(ReductionError::InvalidK { k, n });
    }
    let blocks: Vec<VertexBlock> = (0..n).map(VertexBlock::at).collect();
    let mut edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for j in 0..4 {
            edges.extend([(b.v[j], b.u[j]), (b.v[j], b.w[j]), (b.u[j], b.w[j])]);
        }
        edges.extend([(b.v[0], b.u[1]), (b.w[1], b.u[2]), (b.w[2], b.u[3]), (b.v[0], b.s)]);
        if i + 1 < n {
            edges.push((b.w[0], blocks[i + 1].u[0]));
        }
    }
    // Selectors claim copies in order s_1, s_2, ...; each takes the lowest
    // free copy v_k^j (j >= 1) of every neighbour k.
    let mut next_copy = vec![1usize; n];
    for i in 0..n {
        for &k in g.neighbors(i) {
            edges.push((blocks[i].s, blocks[k].v[next_copy[k]]));
            next_copy[k] += 1;
        }
    }
    let mut next = BLOCK * n;
    for b in &blocks {
        let padded = b
            .v
            .iter()
            .map(|&x| (x, FORBIDDEN_V))
            .chain(b.u.iter().chain(&b.w).map(|&x| (x, FORBIDDEN_UW)));
        for (x, count) in padded {
            for _ in 0..count {
                edges.push((x, next));
                next += 1;
            }
        }
    }
    let forbidden: Vec<Vertex> = (BLOCK * n..next).collect();
    let target = Graph::new(next, edges, forbidden).expect("construction emits a simple graph");
    Ok(ReductionInstance {
        source: g.clone(),
        k,
        target,
        k_prime: 4 * n + 8 * k,
        vertex_map: blocks,
        forbidden_count: next - BLOCK * n,
    })
}

pub fn is_dominating_set(g: &Graph, set: &[Vertex]) -> bool {
    let mut dominated = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return false;
        }
        dominated[v] = true;
        for &u in g.neighbors(v) {
            dominated[u] = true;
        }
    }
    dominated.into_iter().all(|d| d)
}

/// The alliance `X ∪ Y ∪ Z` built from a dominating set: every `u^0, v^0,
/// w^0`, the chain vertices of dominating vertices, and `s_i` of the rest.
pub fn alliance_from_dominating_set(inst: &ReductionInstance, dominating_set: &[Vertex]) -> Result<AllianceSolution, ReductionError> {
    let n = inst.source.n();
    if let Some(&v) = dominating_set.iter().find(|&&v| v >= n) {
        return Err(ReductionError::VertexOutOfRange(v));
    }
    let mut ds = dominating_set.to_vec();
    ds.sort_unstable();
    ds.dedup();
    if !is_dominating_set(&inst.source, &ds) {
        return Err(ReductionError::NotDominating);
    }
    if ds.len() > inst.k {
        return Err(ReductionError::Oversized { size: ds.len(), budget: inst.k });
    }
    let mut members = Vec::with_capacity(4 * n + 8 * ds.len());
    for (i, b) in inst.vertex_map.iter().enumerate() {
        members.extend([b.u[0], b.v[0], b.w[0]]);
        if ds.binary_search(&i).is_ok() {
            members.extend(b.chain());
        } else {
            members.push(b.s);
        }
    }
    Ok(verify_alliance(&inst.target, &members))
}

/// Source vertices whose nine chain vertices all lie in the alliance.
pub fn extract_dominating_set(inst: &ReductionInstance, alliance: &[Vertex]) -> Result<Vec<Vertex>, ReductionError> {
    if let Some(&v) = alliance.iter().find(|&&v| v >= inst.target.n()) {
        return Err(ReductionError::VertexOutOfRange(v));
    }
    let check = verify_alliance(&inst.target, alliance);
    if !check.valid {
        return Err(ReductionError::InvalidAlliance);
    }
    if check.size > inst.k_prime {
        return Err(ReductionError::Oversized { size: check.size, budget: inst.k_prime });
    }
    let mut inside = vec![false; inst.target.n()];
    for &v in &check.members {
        inside[v] = true;
    }
    let ds: Vec<Vertex> = inst
        .vertex_map
        .iter()
        .enumerate()
        .filter(|(_, b)| b.chain().iter().all(|&x| inside[x]))
        .map(|(i, _)| i)
        .collect();
    if ds.len() > inst.k || !is_dominating_set(&inst.source, &ds) {
        return Err(ReductionError::ExtractionFailed(ds));
    }
    Ok(ds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeMismatch {
    pub vertex: Vertex,
    pub expected: usize,
    pub actual: usize,
}

/// Compares every target degree with the table the construction promises:
/// `v^0` 6, other `v^j` 5, `s` 4, `u` 6 except the first block's `u^0` (5),
/// `w` 6 except `w^3` and the last block's `w^0` (5), forbidden vertices 1.
pub fn degree_audit(inst: &ReductionInstance) -> Vec<DegreeMismatch> {
    let n = inst.vertex_map.len();
    let mut expected = vec![1usize; inst.target.n()];
    for (i, b) in inst.vertex_map.iter().enumerate() {
        expected[b.v[0]] = 6;
        for j in 1..4 {
            expected[b.v[j]] = 5;
        }
        expected[b.s] = 4;
        for j in 0..4 {
            expected[b.u[j]] = 6;
            expected[b.w[j]] = 6;
        }
        expected[b.w[3]] = 5;
        if i == 0 {
            expected[b.u[0]] = 5;
        }
        if i + 1 == n {
            expected[b.w[0]] = 5;
        }
    }
    inst.target
        .vertices()
        .filter(|&x| inst.target.degree(x) != expected[x])
        .map(|x| DegreeMismatch { vertex: x, expected: expected[x], actual: inst.target.degree(x) })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("regularity must be at least 3, got {0}")]
    Regularity(usize),
    #[error("girth must be at least 3, got {0}")]
    Girth(usize),
    #[error("graph size must be at least 2, got {0}")]
    Size(usize),
}

/// Lower bound on the order of a graph with minimum degree `r` and girth
/// `g`, rounded down.
pub fn moore_bound(r: usize, g: usize) -> Result<BigUint, BoundsError> {
    if r < 3 {
        return Err(BoundsError::Regularity(r));
    }
    if g < 3 {
        return Err(BoundsError::Girth(g));
    }
    let r_big = BigUint::from(r);
    let branch = BigUint::from(r - 1);
    let two = BigUint::from(2u32);
    let numer = if g % 2 == 1 {
        &r_big * Pow::pow(&branch, (g - 1) / 2) - &two
    } else {
        &two * Pow::pow(&branch, g / 2) - &two
    };
    Ok(numer / BigUint::from(r - 2))
}

/// Smallest integer `g` with `g >= (4/3) log_{r-1} size`, i.e.
/// `(r-1)^(3g) >= size^4`.
pub fn girth_lower_bound(r: usize, size: usize) -> Result<usize, BoundsError> {
    if r < 3 {
        return Err(BoundsError::Regularity(r));
    }
    if size < 2 {
        return Err(BoundsError::Size(size));
    }
    let target = Pow::pow(&BigUint::from(size), 4u32);
    let step = Pow::pow(&BigUint::from(r - 1), 3u32);
    let mut power = BigUint::one();
    let mut g = 0;
    while power < target {
        power *= &step;
        g += 1;
    }
    Ok(g)
}

/// The exponent `c` with MSMD(3) order growing like `n^c`, as a fraction.
pub const MSMD3_EXPONENT: (u64, u64) = (2871, 10_000);
/// The inverse exponent used for the gadget order bound, as a fraction.
pub const GADGET_EXPONENT: (u64, u64) = (871, 250);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetBounds {
    pub r: usize,
    pub n_gadget: usize,
    pub g: usize,
    #[serde(serialize_with = "as_string")]
    pub moore_lower_bound: BigUint,
    pub c: (u64, u64),
    /// Largest gadget order consistent with an MSMD(3) of order
    /// `moore_lower_bound`.
    #[serde(serialize_with = "as_string")]
    pub gadget_size_estimate: BigUint,
}

fn as_string<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn gadget_bounds(r: usize, n_gadget: usize) -> Result<GadgetBounds, BoundsError> {
    let g = girth_lower_bound(r, n_gadget)?.max(3);
    let moore = moore_bound(r, g)?;
    let k_plus_one = moore.clone().max(BigUint::one());
    Ok(GadgetBounds {
        r,
        n_gadget,
        g,
        moore_lower_bound: moore,
        c: MSMD3_EXPONENT,
        gadget_size_estimate: size_estimate_for(&k_plus_one),
    })
}

/// Smallest integer `N` with `N >= ((k'+1)/c)^(871/250)`.
pub fn size_estimate(k_prime: usize) -> BigUint {
    size_estimate_for(&BigUint::from(k_prime + 1))
}

fn size_estimate_for(k_plus_one: &BigUint) -> BigUint {
    let (c_num, c_den) = MSMD3_EXPONENT;
    let (e_num, e_den) = GADGET_EXPONENT;
    // base = (k'+1)/c = (k'+1) * c_den / c_num
    let num = Pow::pow(&(k_plus_one * c_den), e_num);
    let den = Pow::pow(&BigUint::from(c_num), e_num);
    // N^e_den * den >= num
    let holds = |x: &BigUint| Pow::pow(x, e_den) * &den >= num;
    let mut hi = BigUint::one();
    while !holds(&hi) {
        hi <<= 1;
    }
    let mut lo = &hi >> 1;
    while lo < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if holds(&mid) {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    hi
}

/// The inequality chain bounding the gadget order, checked exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeEstimateChain {
    pub k_prime: usize,
    /// `c = 2871/10000` does not exceed `(2/3) log_5 2`, i.e. `5^8613 <= 2^20000`.
    pub c_is_lower_bound: bool,
    /// `c * 871/250 >= 1`, so the stated exponent inverts `c`.
    pub exponent_inverts_c: bool,
    #[serde(serialize_with = "as_string")]
    pub size_estimate: BigUint,
    /// At the estimate, `c * N^c >= k'+1`: an MSMD(3) of order `k'+1` fits.
    pub estimate_meets_bound: bool,
}

pub fn size_estimate_chain(k_prime: usize) -> SizeEstimateChain {
    let (c_num, c_den) = MSMD3_EXPONENT;
    let (e_num, e_den) = GADGET_EXPONENT;
    let five = BigUint::from(5u32);
    let two = BigUint::from(2u32);
    let c_is_lower_bound = Pow::pow(&five, 3 * c_num) <= Pow::pow(&two, 2 * c_den);
    let exponent_inverts_c = c_num * e_num >= c_den * e_den;
    let n = size_estimate(k_prime);
    // c * N^(c_num/c_den) >= k'+1  <=>  N^c_num * c_num^c_den >= ((k'+1) c_den)^c_den
    let lhs = Pow::pow(&n, c_num) * Pow::pow(&BigUint::from(c_num), c_den);
    let rhs = Pow::pow(&BigUint::from((k_prime as u64 + 1) * c_den), c_den);
    SizeEstimateChain {
        k_prime,
        c_is_lower_bound,
        exponent_inverts_c,
        size_estimate: n,
        estimate_meets_bound: lhs >= rhs,
    }
}
