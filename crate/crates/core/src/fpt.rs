//! ILP-backed parameterized solvers: distance to clique and twin cover.
//!
//! Both solvers guess how the alliance meets the modulator and, coarsely,
//! which remainder classes it touches, then let a small ILP choose how many
//! vertices to take from each class. Vertices of one class are
//! interchangeable, so counts determine the alliance up to relabelling.

use serde::Serialize;
use thiserror::Error;

use crate::alliance::{protection_threshold, verify_alliance, AllianceSolution};
use crate::graph::{Graph, Vertex};
use crate::ilp::{solve_ilp, IlpError, IlpProblem, IlpStatus};
use crate::params::{partition_clique_sets, partition_twin_classes, ParamError, PartitionMode, TwinPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FptError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Ilp(#[from] IlpError),
    #[error("parameterized solvers do not support forbidden vertices")]
    ForbiddenVertices,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is not in P")]
    NotInP(Vertex),
    #[error("input set is not a defensive alliance")]
    InvalidAlliance,
    #[error("partition is not in cliques-remainder mode")]
    WrongPartitionMode,
    #[error("materialized set {0:?} failed verification")]
    Unverified(Vec<Vertex>),
}

/// Closed neighbours `u` still needs after counting `P`:
/// `ceil((d(u)+1)/2) - |N[u] ∩ P|`. Non-positive means satisfied.
pub fn demand(g: &Graph, u: Vertex, p: &[Vertex]) -> Result<i64, FptError> {
    if !p.contains(&u) {
        return Err(FptError::NotInP(u));
    }
    let covered = p.iter().filter(|&&w| w == u || g.has_edge(u, w)).count();
    Ok(protection_threshold(g.degree(u)) as i64 - covered as i64)
}

/// One guess of the distance-to-clique solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DtcGuess {
    pub p: Vec<Vertex>,
    /// Ids of classes contributing no vertex.
    pub null_classes: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DtcStats {
    pub modulator_size: usize,
    pub classes: usize,
    pub guesses: u64,
    pub ilp_solves: u64,
}

/// One count choice for the cliques of size `size` in clique set `class`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BucketChoice {
    pub class: usize,
    pub size: usize,
    pub full: usize,
    pub partial: usize,
}

/// One guess of the twin-cover solver; buckets not listed are null.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TcGuess {
    pub p: Vec<Vertex>,
    pub buckets: Vec<BucketChoice>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BucketCount {
    pub class: usize,
    pub size: usize,
    pub cliques: usize,
    pub combinations: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TcStats {
    pub cover_size: usize,
    /// Size of the best single-clique alliance, if any clique is large enough.
    pub in_clique_size: Option<usize>,
    pub buckets: Vec<BucketCount>,
    pub guesses: u64,
    pub ilp_solves: u64,
}

fn check_input(g: &Graph) -> Result<(), FptError> {
    if g.n() == 0 {
        return Err(FptError::EmptyGraph);
    }
    if g.has_forbidden() {
        return Err(FptError::ForbiddenVertices);
    }
    Ok(())
}

fn subsets(set: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (0u64..1 << set.len()).map(move |mask| {
        set.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
    })
}

fn overlap(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

/// Smaller size wins, then the lexicographically smaller sorted witness.
fn improve(best: &mut Option<Vec<Vertex>>, mut candidate: Vec<Vertex>) {
    candidate.sort_unstable();
    let better = match best {
        None => true,
        Some(b) => (candidate.len(), &candidate) < (b.len(), b),
    };
    if better {
        *best = Some(candidate);
    }
}

fn solve_counts(prob: &IlpProblem) -> Result<Option<Vec<i64>>, FptError> {
    if prob.var_count() == 0 {
        return Ok(prob.constraints.iter().all(|c| c.rhs <= 0).then(Vec::new));
    }
    let sol = solve_ilp(prob)?;
    Ok((sol.status == IlpStatus::Optimal).then_some(sol.assignment))
}

fn finish(g: &Graph, best: Option<Vec<Vertex>>) -> Result<AllianceSolution, FptError> {
    // Any graph without forbidden vertices has V itself as an alliance.
    let members = best.expect("the whole vertex set is always an alliance");
    Ok(verify_alliance(g, &members))
}

/// Minimum defensive alliance given a modulator `d` whose removal leaves a
/// clique.
pub fn solve_dtc(g: &Graph, d: &[Vertex]) -> Result<AllianceSolution, FptError> {
    Ok(solve_dtc_with_stats(g, d)?.0)
}

pub fn solve_dtc_with_stats(g: &Graph, d: &[Vertex]) -> Result<(AllianceSolution, DtcStats), FptError> {
    check_input(g)?;
    let partition = partition_twin_classes(g, d)?;
    let classes = &partition.classes;
    let t = classes.len();
    let degree: Vec<usize> = classes.iter().map(|c| g.degree(c.members[0])).collect();
    let mut stats = DtcStats { modulator_size: partition.modulator.len(), classes: t, ..Default::default() };
    let mut best: Option<Vec<Vertex>> = None;

    for p in subsets(&partition.modulator) {
        let demands: Vec<(Vertex, i64)> =
            p.iter().map(|&u| Ok((u, demand(g, u, &p)?))).collect::<Result<_, FptError>>()?;
        for null_mask in 0u64..1 << t {
            stats.guesses += 1;
            let guess = DtcGuess {
                p: p.clone(),
                null_classes: (0..t).filter(|i| null_mask >> i & 1 == 1).collect(),
            };
            let active: Vec<usize> = (0..t).filter(|i| null_mask >> i & 1 == 0).collect();
            if guess.p.is_empty() && active.is_empty() {
                continue;
            }
            if best.as_ref().is_some_and(|b| guess.p.len() + active.len() >= b.len()) {
                continue;
            }
            let bounds = active.iter().map(|&i| (1, classes[i].members.len() as i64)).collect();
            let mut prob = IlpProblem::new(vec![1; active.len()], bounds);
            for &(u, need) in &demands {
                let terms: Vec<(usize, i64)> = active
                    .iter()
                    .enumerate()
                    .filter(|(_, &i)| classes[i].signature.contains(&u))
                    .map(|(k, _)| (k, 1))
                    .collect();
                prob.add_ge_terms(&terms, need);
            }
            // A picked class vertex sees every picked remainder vertex.
            let all: Vec<(usize, i64)> = (0..active.len()).map(|k| (k, 1)).collect();
            for &i in &active {
                let need = protection_threshold(degree[i]) as i64 - overlap(&classes[i].signature, &guess.p) as i64;
                prob.add_ge_terms(&all, need);
            }
            stats.ilp_solves += 1;
            let Some(counts) = solve_counts(&prob)? else { continue };
            let mut members = guess.p.clone();
            for (k, &i) in active.iter().enumerate() {
                members.extend_from_slice(&classes[i].members[..counts[k] as usize]);
            }
            if !verify_alliance(g, &members).valid {
                return Err(FptError::Unverified(members));
            }
            improve(&mut best, members);
        }
    }
    Ok((finish(g, best)?, stats))
}

/// Minimum defensive alliance given a twin cover `t`.
pub fn solve_twincover(g: &Graph, t: &[Vertex]) -> Result<AllianceSolution, FptError> {
    Ok(solve_twincover_with_stats(g, t)?.0)
}

/// All `(full, partial)` count pairs for `m` cliques of size `l`, with at
/// most `l - 1` partial cliques.
fn bucket_choices(l: usize, m: usize) -> Vec<(usize, usize)> {
    let max_partial = (l - 1).min(m);
    (0..=max_partial).flat_map(|y| (0..=m - y).map(move |f| (f, y))).collect()
}

struct Bucket<'a> {
    class: usize,
    size: usize,
    cliques: &'a [Vec<Vertex>],
}

pub fn solve_twincover_with_stats(g: &Graph, t: &[Vertex]) -> Result<(AllianceSolution, TcStats), FptError> {
    check_input(g)?;
    let partition = partition_clique_sets(g, t)?;
    let classes = &partition.classes;
    let mut stats = TcStats { cover_size: partition.modulator.len(), ..Default::default() };
    let mut best: Option<Vec<Vertex>> = None;

    // A clique at least as large as its set's cover neighbourhood holds an
    // alliance by itself: take half of the closed neighbourhood, rounded up.
    for class in classes {
        let ti = class.signature.len();
        if let Some((&l, cliques)) = class.cliques_by_size.range(ti.max(1)..).next() {
            let take = (l + ti).div_ceil(2);
            improve(&mut best, cliques[0][..take].to_vec());
        }
    }
    stats.in_clique_size = best.as_ref().map(Vec::len);

    // Otherwise the alliance avoids every such clique, leaving only cliques
    // smaller than their cover neighbourhood.
    let buckets: Vec<Bucket> = classes
        .iter()
        .flat_map(|c| {
            let ti = c.signature.len();
            c.cliques_by_size
                .range(..ti)
                .map(move |(&size, cliques)| Bucket { class: c.id, size, cliques })
        })
        .collect();
    let choices: Vec<Vec<(usize, usize)>> =
        buckets.iter().map(|b| bucket_choices(b.size, b.cliques.len())).collect();
    stats.buckets = buckets
        .iter()
        .zip(&choices)
        .map(|(b, c)| BucketCount { class: b.class, size: b.size, cliques: b.cliques.len(), combinations: c.len() })
        .collect();

    for p in subsets(&partition.modulator) {
        let demands: Vec<(Vertex, i64)> =
            p.iter().map(|&u| Ok((u, demand(g, u, &p)?))).collect::<Result<_, FptError>>()?;
        let mut pick = vec![0usize; buckets.len()];
        loop {
            stats.guesses += 1;
            let guess = TcGuess {
                p: p.clone(),
                buckets: buckets
                    .iter()
                    .zip(&choices)
                    .zip(&pick)
                    .map(|((b, c), &k)| {
                        let (full, partial) = c[k];
                        BucketChoice { class: b.class, size: b.size, full, partial }
                    })
                    .filter(|c| c.full + c.partial > 0)
                    .collect(),
            };
            if let Some(members) = evaluate_tc_guess(g, classes, &guess, &demands, &best, &mut stats)? {
                improve(&mut best, members);
            }
            if !advance(&mut pick, &choices) {
                break;
            }
        }
    }
    Ok((finish(g, best)?, stats))
}

/// Mixed-radix increment; false after the last combination.
fn advance(pick: &mut [usize], choices: &[Vec<(usize, usize)>]) -> bool {
    for (k, c) in pick.iter_mut().zip(choices) {
        *k += 1;
        if *k < c.len() {
            return true;
        }
        *k = 0;
    }
    false
}

fn evaluate_tc_guess(
    g: &Graph,
    classes: &[crate::params::TwinClass],
    guess: &TcGuess,
    demands: &[(Vertex, i64)],
    best: &Option<Vec<Vertex>>,
    stats: &mut TcStats,
) -> Result<Option<Vec<Vertex>>, FptError> {
    if guess.p.is_empty() && guess.buckets.is_empty() {
        return Ok(None);
    }
    let fixed: usize = guess.p.len() + guess.buckets.iter().map(|b| b.full * b.size).sum::<usize>();
    let partial_total: usize = guess.buckets.iter().map(|b| b.partial).sum();
    if best.as_ref().is_some_and(|b| fixed + partial_total >= b.len()) {
        return Ok(None);
    }
    // Partial-clique variables, in bucket order.
    let mut var_bucket = Vec::new();
    let mut bounds = Vec::new();
    for (bi, b) in guess.buckets.iter().enumerate() {
        let class = &classes[b.class];
        let ti = class.signature.len();
        let seen = overlap(&class.signature, &guess.p);
        let need = (b.size + ti).div_ceil(2) as i64 - seen as i64;
        if b.full > 0 && need > b.size as i64 {
            return Ok(None);
        }
        let lo = need.max(1);
        let hi = b.size as i64 - 1;
        if b.partial > 0 && lo > hi {
            return Ok(None);
        }
        for _ in 0..b.partial {
            var_bucket.push(bi);
            bounds.push((lo, hi));
        }
    }
    let mut prob = IlpProblem::new(vec![1; var_bucket.len()], bounds);
    for &(u, need) in demands {
        let mut from_full = 0i64;
        for b in &guess.buckets {
            if classes[b.class].signature.contains(&u) {
                from_full += (b.full * b.size) as i64;
            }
        }
        let terms: Vec<(usize, i64)> = var_bucket
            .iter()
            .enumerate()
            .filter(|(_, &bi)| classes[guess.buckets[bi].class].signature.contains(&u))
            .map(|(k, _)| (k, 1))
            .collect();
        prob.add_ge_terms(&terms, need - from_full);
    }
    stats.ilp_solves += 1;
    let Some(counts) = solve_counts(&prob)? else { return Ok(None) };
    let mut members = guess.p.clone();
    let mut var = 0;
    for b in &guess.buckets {
        let cliques = &classes[b.class].cliques_by_size[&b.size];
        for clique in &cliques[..b.full] {
            members.extend_from_slice(clique);
        }
        for clique in &cliques[b.full..b.full + b.partial] {
            members.extend_from_slice(&clique[..counts[var] as usize]);
            var += 1;
        }
    }
    if !verify_alliance(g, &members).valid {
        return Err(FptError::Unverified(members));
    }
    Ok(Some(members))
}

/// Rewrites a valid alliance so that, for every clique set and clique size
/// `l`, at most `l - 1` cliques are partially picked. Size, validity and the
/// intersection with the cover are preserved.
pub fn normalize_partial_cliques(
    g: &Graph,
    partition: &TwinPartition,
    s: &[Vertex],
) -> Result<Vec<Vertex>, FptError> {
    if partition.mode != PartitionMode::CliquesRemainder {
        return Err(FptError::WrongPartitionMode);
    }
    if !verify_alliance(g, s).valid {
        return Err(FptError::InvalidAlliance);
    }
    let mut inside = vec![false; g.n()];
    for &v in s {
        inside[v] = true;
    }
    for class in &partition.classes {
        for (&l, cliques) in &class.cliques_by_size {
            let fill = |c: &Vec<Vertex>, inside: &[bool]| c.iter().filter(|&&v| inside[v]).count();
            loop {
                let partial: Vec<usize> = (0..cliques.len())
                    .filter(|&k| (1..l).contains(&fill(&cliques[k], &inside)))
                    .collect();
                if partial.len() < l.max(1) {
                    break;
                }
                let &drain = partial.iter().min_by_key(|&&k| fill(&cliques[k], &inside)).expect("non-empty");
                let moving: Vec<Vertex> = cliques[drain].iter().copied().filter(|&v| inside[v]).collect();
                for v in moving {
                    inside[v] = false;
                    let &target = partial
                        .iter()
                        .filter(|&&k| k != drain && fill(&cliques[k], &inside) < l)
                        .max_by_key(|&&k| (fill(&cliques[k], &inside), std::cmp::Reverse(k)))
                        .expect("other partial cliques have room");
                    let &w = cliques[target].iter().find(|&&w| !inside[w]).expect("target has room");
                    inside[w] = true;
                }
            }
        }
    }
    Ok(g.vertices().filter(|&v| inside[v]).collect())
}

/// Number of partially picked cliques per `(class, size)`, for bucket-bound
/// checks.
pub fn partial_clique_counts(partition: &TwinPartition, s: &[Vertex]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for class in &partition.classes {
        for (&l, cliques) in &class.cliques_by_size {
            let partial = cliques
                .iter()
                .filter(|c| (1..l).contains(&c.iter().filter(|v| s.contains(v)).count()))
                .count();
            out.push((class.id, l, partial));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alliance::brute_force_min_alliance;
    use crate::graph::fixtures::*;

    fn oracle(g: &Graph) -> usize {
        brute_force_min_alliance(g, None).unwrap().unwrap().size
    }

    #[test]
    fn demand_formula() {
        // Degree 5 hub whose neighbour 1 is in P.
        let g = star(5);
        assert_eq!(demand(&g, 0, &[0, 1]).unwrap(), 1);
        let k1 = Graph::from_edges(1, []).unwrap();
        assert_eq!(demand(&k1, 0, &[0]).unwrap(), 0);
        assert_eq!(demand(&star(6), 0, &[0]).unwrap(), 3);
        assert_eq!(demand(&g, 2, &[0]), Err(FptError::NotInP(2)));
    }

    #[test]
    fn dtc_small() {
        let s = solve_dtc(&complete(4), &[]).unwrap();
        assert!(s.valid);
        assert_eq!(s.size, 2);
        let mut edges = complete(5).edges().to_vec();
        edges.retain(|&e| e != (1, 3));
        let g = Graph::from_edges(5, edges).unwrap();
        let (s, stats) = solve_dtc_with_stats(&g, &[1]).unwrap();
        assert_eq!(s.size, oracle(&g));
        assert!(stats.guesses <= (1 << stats.modulator_size) * (1 << stats.classes));
        assert_eq!(solve_dtc(&path(4), &[0]), Err(FptError::Param(ParamError::RemainderNotClique)));
    }

    #[test]
    fn twincover_small() {
        let s = solve_twincover(&star(4), &[0]).unwrap();
        assert_eq!(s.size, 1);
        // K4 fully joined to a non-adjacent pair {0, 1}.
        let mut edges = Vec::new();
        for a in 2..6 {
            edges.extend([(0, a), (1, a)]);
            edges.extend((a + 1..6).map(|b| (a, b)));
        }
        let g = Graph::from_edges(6, edges).unwrap();
        let (s, stats) = solve_twincover_with_stats(&g, &[0, 1]).unwrap();
        assert_eq!(stats.in_clique_size, Some(3));
        assert_eq!(s.size, oracle(&g));
        assert_eq!(
            solve_twincover(&cycle(6), &[0]),
            Err(FptError::Param(ParamError::InvalidTwinCover))
        );
    }

    #[test]
    fn bucket_choice_count() {
        for l in 1..5 {
            for m in 0..5 {
                let c = bucket_choices(l, m);
                assert!(c.len() <= ((l - 1).min(m) + 1) * (m + 1));
                assert!(c.iter().all(|&(f, y)| f + y <= m && y < l.max(1)));
            }
        }
    }

    #[test]
    fn normalize_two_half_cliques() {
        // Two K2's both joined to the cover vertex 0.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap();
        let partition = partition_clique_sets(&g, &[0]).unwrap();
        let s = [0, 1, 3];
        assert!(verify_alliance(&g, &s).valid);
        let out = normalize_partial_cliques(&g, &partition, &s).unwrap();
        assert_eq!(out.len(), 3);
        assert!(verify_alliance(&g, &out).valid);
        assert!(partial_clique_counts(&partition, &out).iter().all(|&(_, l, p)| p < l));
        assert_eq!(normalize_partial_cliques(&g, &partition, &out).unwrap(), out);
        assert_eq!(normalize_partial_cliques(&g, &partition, &[1]), Err(FptError::InvalidAlliance));
    }
}
