//! Defensive-alliance semantics: the protection threshold, the verifier, and
//! the exhaustive oracle every solver is checked against.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Largest graph the exhaustive oracle accepts unless the caller overrides it.
pub const DEFAULT_BRUTE_FORCE_GUARD: usize = 24;

/// Minimum number of closed neighbours a member of degree `degree` needs
/// inside the alliance: `ceil((degree + 1) / 2)`.
pub fn protection_threshold(degree: usize) -> usize {
    (degree + 2) / 2
}

/// A member whose closed neighbourhood is not majority-inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: Vertex,
    pub inside: usize,
    pub required: usize,
}

/// A candidate vertex set together with its verification outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllianceSolution {
    pub members: Vec<Vertex>,
    pub size: usize,
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub forbidden_members: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllianceError {
    #[error("exhaustive search refused: {n} vertices exceeds the guard of {guard}")]
    GuardExceeded { n: usize, guard: usize },
}

/// Checks the closed-majority condition for every member.
///
/// Members are deduplicated and sorted. Panics if a member id is out of range.
pub fn verify_alliance(g: &Graph, members: &[Vertex]) -> AllianceSolution {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let mut inside = vec![false; g.n()];
    for &v in &members {
        assert!(v < g.n(), "member {v} out of range");
        inside[v] = true;
    }
    let violations: Vec<Violation> = members
        .iter()
        .filter_map(|&v| {
            let count = 1 + g.neighbors(v).iter().filter(|&&u| inside[u]).count();
            let required = protection_threshold(g.degree(v));
            (count < required).then_some(Violation { vertex: v, inside: count, required })
        })
        .collect();
    let forbidden_members: Vec<Vertex> =
        members.iter().copied().filter(|&v| g.is_forbidden(v)).collect();
    AllianceSolution {
        size: members.len(),
        valid: !members.is_empty() && violations.is_empty() && forbidden_members.is_empty(),
        members,
        violations,
        forbidden_members,
    }
}

/// Exhaustive minimum alliance with the default size guard.
pub fn brute_force_min_alliance(
    g: &Graph,
    size_cap: Option<usize>,
) -> Result<Option<AllianceSolution>, AllianceError> {
    brute_force_min_alliance_guarded(g, size_cap, DEFAULT_BRUTE_FORCE_GUARD)
}

/// Minimum-cardinality alliance avoiding forbidden vertices, or `None` if no
/// alliance of at most `size_cap` vertices exists.
///
/// Only vertex sets inducing a connected subgraph are enumerated: every
/// component of an alliance is itself an alliance. Sets are grown from their
/// smallest vertex so each connected set is produced once, and sizes are
/// tried in increasing order. Among minimum alliances the lexicographically
/// smallest sorted member list wins.
pub fn brute_force_min_alliance_guarded(
    g: &Graph,
    size_cap: Option<usize>,
    guard: usize,
) -> Result<Option<AllianceSolution>, AllianceError> {
    let n = g.n();
    if n > guard || n > 64 {
        return Err(AllianceError::GuardExceeded { n, guard: guard.min(64) });
    }
    let adj: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let allowed: u64 = g
        .vertices()
        .filter(|&v| !g.is_forbidden(v))
        .fold(0, |m, v| m | 1 << v);
    let thresholds: Vec<u32> = g
        .vertices()
        .map(|v| protection_threshold(g.degree(v)) as u32)
        .collect();
    let cap = size_cap.unwrap_or(n).min(n);
    let search = Search { adj: &adj, allowed, thresholds: &thresholds };
    for size in 1..=cap {
        let mut best: Option<u64> = None;
        for seed in 0..n {
            if allowed >> seed & 1 == 0 {
                continue;
            }
            let above = !((1u64 << seed) | ((1u64 << seed) - 1)) & allowed;
            let ext = adj[seed] & above;
            search.extend(1 << seed, ext, above, size, &mut best);
        }
        if let Some(mask) = best {
            let members: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            return Ok(Some(verify_alliance(g, &members)));
        }
    }
    Ok(None)
}

struct Search<'a> {
    adj: &'a [u64],
    allowed: u64,
    thresholds: &'a [u32],
}

impl Search<'_> {
    fn is_alliance(&self, set: u64) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if 1 + (self.adj[v] & set).count_ones() < self.thresholds[v] {
                return false;
            }
        }
        true
    }

    /// Enumerates connected sets of exactly `size` vertices extending `set`,
    /// drawing new vertices from `ext` (restricted to `pool`).
    fn extend(&self, set: u64, mut ext: u64, pool: u64, size: usize, best: &mut Option<u64>) {
        if set.count_ones() as usize == size {
            if self.is_alliance(set) && best.is_none_or(|b| lex_less(set, b)) {
                *best = Some(set);
            }
            return;
        }
        let mut neighborhood = set;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            neighborhood |= self.adj[v];
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let exclusive = self.adj[w] & !neighborhood & pool & self.allowed;
            self.extend(set | 1 << w, ext | exclusive, pool, size, best);
        }
    }
}

/// Lexicographic order on sorted member lists of equal length: the set owning
/// the smallest element of the symmetric difference comes first.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn thresholds() {
        assert_eq!(protection_threshold(6), 4);
        assert_eq!(protection_threshold(0), 1);
        assert_eq!(protection_threshold(5), 3);
        assert_eq!(protection_threshold(4), 3);
        assert_eq!(protection_threshold(3), 2);
    }

    #[test]
    fn verify_sample9() {
        let g = sample9();
        assert!(verify_alliance(&g, &[4, 5, 6]).valid);
        let single = verify_alliance(&g, &[4]);
        assert!(!single.valid);
        assert_eq!(single.violations, vec![Violation { vertex: 4, inside: 1, required: 3 }]);
        let empty = verify_alliance(&g, &[]);
        assert!(!empty.valid);
        assert!(empty.violations.is_empty());
    }

    #[test]
    fn forbidden_members_invalidate() {
        let g = Graph::new(2, [(0, 1)], [1]).unwrap();
        let s = verify_alliance(&g, &[0, 1]);
        assert!(!s.valid);
        assert_eq!(s.forbidden_members, vec![1]);
        // Vertex 0 alone: degree 1, threshold 1.
        assert!(verify_alliance(&g, &[0]).valid);
    }

    #[test]
    fn brute_force_small() {
        let best = brute_force_min_alliance(&cycle(4), None).unwrap().unwrap();
        assert_eq!(best.members, vec![0, 1]);
        let k1 = Graph::from_edges(1, []).unwrap();
        assert_eq!(brute_force_min_alliance(&k1, None).unwrap().unwrap().size, 1);
        let best = brute_force_min_alliance(&sample9(), None).unwrap().unwrap();
        assert_eq!(best.members, vec![0, 1]);
        assert!(best.valid);
    }

    #[test]
    fn brute_force_respects_cap_and_guard() {
        assert_eq!(brute_force_min_alliance(&cycle(6), Some(1)).unwrap(), None);
        let big = path(30);
        assert_eq!(
            brute_force_min_alliance(&big, None),
            Err(AllianceError::GuardExceeded { n: 30, guard: 24 })
        );
        assert!(brute_force_min_alliance_guarded(&big, None, 40).unwrap().is_some());
    }

    #[test]
    fn brute_force_skips_forbidden() {
        // Triangle with one forbidden corner: {0,1} still protects both
        // (degree 2, threshold 2).
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)], [0]).unwrap();
        assert_eq!(brute_force_min_alliance(&g, None).unwrap().unwrap().members, vec![1, 2]);
        let all = Graph::new(2, [(0, 1)], [0, 1]).unwrap();
        assert_eq!(brute_force_min_alliance(&all, None).unwrap(), None);
    }

    #[test]
    fn lex_order() {
        assert!(lex_less(0b011, 0b101));
        assert!(!lex_less(0b101, 0b011));
        assert!(!lex_less(0b11, 0b11));
    }
}
