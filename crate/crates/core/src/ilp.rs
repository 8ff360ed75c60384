//! Exact bounded-integer linear minimization.
//!
//! Problems have the form `minimize c.x` subject to `A x >= b` and
//! `lo <= x <= hi` with integer data. The solver is a depth-first
//! branch-and-bound over an exact rational simplex relaxation. Every node
//! first tightens variable bounds by activity propagation, then solves the
//! relaxation; it branches on the lowest-index fractional variable and
//! explores the floor branch first.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::alliance::protection_threshold;
use crate::graph::Graph;

type Q = BigRational;

/// `coeffs . x >= rhs`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpProblem {
    pub objective: Vec<i64>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IlpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSolution {
    pub status: IlpStatus,
    /// Empty when infeasible.
    pub assignment: Vec<i64>,
    pub objective_value: i64,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IlpError {
    #[error("malformed problem: {0}")]
    Malformed(String),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: usize },
}

/// Optional caps on a single solve.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveLimits {
    pub max_nodes: Option<usize>,
    pub deadline: Option<Instant>,
}

impl IlpProblem {
    /// A problem with the given objective and variable boxes and no constraints.
    pub fn new(objective: Vec<i64>, bounds: Vec<(i64, i64)>) -> Self {
        IlpProblem { objective, constraints: Vec::new(), bounds }
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn add_ge(&mut self, coeffs: Vec<i64>, rhs: i64) {
        self.constraints.push(Constraint { coeffs, rhs });
    }

    pub fn add_le(&mut self, coeffs: Vec<i64>, rhs: i64) {
        self.add_ge(coeffs.into_iter().map(|c| -c).collect(), -rhs);
    }

    /// `sum coef * x_var >= rhs` from sparse terms; repeated variables add up.
    pub fn add_ge_terms(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let mut coeffs = vec![0; self.var_count()];
        for &(var, coef) in terms {
            coeffs[var] += coef;
        }
        self.add_ge(coeffs, rhs);
    }

    pub fn validate(&self) -> Result<(), IlpError> {
        let p = self.var_count();
        if self.bounds.len() != p {
            return Err(IlpError::Malformed(format!(
                "{} bounds for {p} variables",
                self.bounds.len()
            )));
        }
        if let Some(j) = self.bounds.iter().position(|&(lo, hi)| lo > hi) {
            return Err(IlpError::Malformed(format!("empty box for variable {j}")));
        }
        if let Some(i) = self.constraints.iter().position(|c| c.coeffs.len() != p) {
            return Err(IlpError::Malformed(format!("constraint {i} has the wrong length")));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[i64]) -> i64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.var_count()
            && self.bounds.iter().zip(x).all(|(&(lo, hi), &v)| lo <= v && v <= hi)
            && self.constraints.iter().all(|c| {
                let lhs: i128 = c.coeffs.iter().zip(x).map(|(&a, &v)| a as i128 * v as i128).sum();
                lhs >= c.rhs as i128
            })
    }

    /// CPLEX-style LP text, for cross-checking with external solvers.
    pub fn to_lp_format(&self) -> String {
        fn terms(coeffs: &[i64]) -> String {
            let mut out = String::new();
            for (j, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
                match (out.is_empty(), c < 0) {
                    (true, false) => write!(out, "{c} x{j}"),
                    (true, true) => write!(out, "-{} x{j}", c.abs()),
                    (false, false) => write!(out, " + {c} x{j}"),
                    (false, true) => write!(out, " - {} x{j}", c.abs()),
                }
                .expect("writing to a String cannot fail");
            }
            if out.is_empty() {
                out.push('0');
            }
            out
        }
        let mut out = String::new();
        let _ = writeln!(out, "Minimize\n obj: {}", terms(&self.objective));
        let _ = writeln!(out, "Subject To");
        for (i, c) in self.constraints.iter().enumerate() {
            let _ = writeln!(out, " c{i}: {} >= {}", terms(&c.coeffs), c.rhs);
        }
        let _ = writeln!(out, "Bounds");
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            let _ = writeln!(out, " {lo} <= x{j} <= {hi}");
        }
        let _ = writeln!(out, "General");
        let names: Vec<String> = (0..self.var_count()).map(|j| format!("x{j}")).collect();
        let _ = writeln!(out, " {}", names.join(" "));
        out.push_str("End\n");
        out
    }
}

/// Solves to proven optimality.
pub fn solve_ilp(prob: &IlpProblem) -> Result<IlpSolution, IlpError> {
    solve_ilp_with_limits(prob, SolveLimits::default())
}

pub fn solve_ilp_with_limits(prob: &IlpProblem, limits: SolveLimits) -> Result<IlpSolution, IlpError> {
    prob.validate()?;
    let mut search = BranchAndBound { prob, limits, nodes: 0, incumbent: None };
    let lo: Vec<i64> = prob.bounds.iter().map(|b| b.0).collect();
    let hi: Vec<i64> = prob.bounds.iter().map(|b| b.1).collect();
    search.explore(lo, hi)?;
    Ok(match search.incumbent {
        Some((value, assignment)) => IlpSolution {
            status: IlpStatus::Optimal,
            assignment,
            objective_value: value,
            nodes: search.nodes,
        },
        None => IlpSolution {
            status: IlpStatus::Infeasible,
            assignment: Vec::new(),
            objective_value: 0,
            nodes: search.nodes,
        },
    })
}

struct BranchAndBound<'a> {
    prob: &'a IlpProblem,
    limits: SolveLimits,
    nodes: usize,
    incumbent: Option<(i64, Vec<i64>)>,
}

impl BranchAndBound<'_> {
    fn explore(&mut self, mut lo: Vec<i64>, mut hi: Vec<i64>) -> Result<(), IlpError> {
        self.nodes += 1;
        if self.limits.max_nodes.is_some_and(|m| self.nodes > m)
            || self.limits.deadline.is_some_and(|d| Instant::now() >= d)
        {
            return Err(IlpError::BudgetExceeded { nodes: self.nodes });
        }
        if !propagate(self.prob, &mut lo, &mut hi) {
            return Ok(());
        }
        let (value, point) = match solve_relaxation(self.prob, &lo, &hi) {
            LpOutcome::Infeasible => return Ok(()),
            LpOutcome::Optimal { value, point } => (value, point),
        };
        let bound = ceil_to_i64(&value);
        if let Some((best, _)) = &self.incumbent {
            if bound >= *best {
                return Ok(());
            }
        }
        match point.iter().position(|q| !q.is_integer()) {
            None => {
                let x: Vec<i64> = point.iter().map(|q| to_i64(&q.to_integer())).collect();
                debug_assert!(self.prob.is_feasible(&x));
                let val = self.prob.evaluate(&x);
                if self.incumbent.as_ref().is_none_or(|(b, _)| val < *b) {
                    self.incumbent = Some((val, x));
                }
                Ok(())
            }
            Some(j) => {
                let f = &point[j];
                let down = to_i64(&f.floor().to_integer());
                let mut floor_hi = hi.clone();
                floor_hi[j] = down;
                self.explore(lo.clone(), floor_hi)?;
                lo[j] = down + 1;
                self.explore(lo, hi)
            }
        }
    }
}

fn to_i64(v: &BigInt) -> i64 {
    i64::try_from(v).expect("solution values fit the variable boxes")
}

fn ceil_to_i64(q: &Q) -> i64 {
    to_i64(&q.ceil().to_integer())
}

/// Activity-based bound tightening. Returns false if some constraint cannot
/// be met inside the current boxes.
fn propagate(prob: &IlpProblem, lo: &mut [i64], hi: &mut [i64]) -> bool {
    if lo.iter().zip(hi.iter()).any(|(l, h)| l > h) {
        return false;
    }
    loop {
        let mut changed = false;
        for c in &prob.constraints {
            let max_act: i128 = c
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, &a)| {
                    let a = a as i128;
                    (a * lo[j] as i128).max(a * hi[j] as i128)
                })
                .sum();
            let rhs = c.rhs as i128;
            if max_act < rhs {
                return false;
            }
            for (j, &a) in c.coeffs.iter().enumerate() {
                if a == 0 || lo[j] == hi[j] {
                    continue;
                }
                let a = a as i128;
                if a > 0 {
                    let rest = max_act - a * hi[j] as i128;
                    let need = Integer::div_ceil(&(rhs - rest), &a);
                    if need > lo[j] as i128 {
                        lo[j] = need.min(hi[j] as i128 + 1) as i64;
                        changed = true;
                    }
                } else {
                    let rest = max_act - a * lo[j] as i128;
                    let cap = Integer::div_floor(&(rhs - rest), &a);
                    if cap < hi[j] as i128 {
                        hi[j] = cap.max(lo[j] as i128 - 1) as i64;
                        changed = true;
                    }
                }
                if lo[j] > hi[j] {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Outcome of the continuous relaxation.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Optimal { value: Q, point: Vec<Q> },
}

/// Continuous relaxation over the problem's own boxes.
pub fn solve_lp_relaxation(prob: &IlpProblem) -> Result<LpOutcome, IlpError> {
    prob.validate()?;
    let lo: Vec<i64> = prob.bounds.iter().map(|b| b.0).collect();
    let hi: Vec<i64> = prob.bounds.iter().map(|b| b.1).collect();
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(LpOutcome::Infeasible);
    }
    Ok(solve_relaxation(prob, &lo, &hi))
}

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Solves the relaxation for boxes `lo..=hi`. Fixed variables are
/// substituted out and the rest shifted to `0 <= y <= hi - lo`.
fn solve_relaxation(prob: &IlpProblem, lo: &[i64], hi: &[i64]) -> LpOutcome {
    let free: Vec<usize> = (0..prob.var_count()).filter(|&j| lo[j] < hi[j]).collect();
    let mut rows: Vec<(Vec<i64>, i64)> = Vec::new();
    for c in &prob.constraints {
        let base: i128 = c.coeffs.iter().zip(lo).map(|(&a, &l)| a as i128 * l as i128).sum();
        let rhs = c.rhs as i128 - base;
        let coeffs: Vec<i64> = free.iter().map(|&j| c.coeffs[j]).collect();
        let min_act: i128 = coeffs
            .iter()
            .zip(&free)
            .map(|(&a, &j)| (a as i128 * (hi[j] - lo[j]) as i128).min(0))
            .sum();
        if min_act >= rhs {
            continue;
        }
        if coeffs.iter().all(|&a| a == 0) {
            return LpOutcome::Infeasible;
        }
        rows.push((coeffs, rhs as i64));
    }
    let upper: Vec<i64> = free.iter().map(|&j| hi[j] - lo[j]).collect();
    let cost: Vec<i64> = free.iter().map(|&j| prob.objective[j]).collect();
    let base_value: i64 = prob.objective.iter().zip(lo).map(|(c, l)| c * l).sum();

    let Some((value, y)) = simplex(&rows, &upper, &cost) else {
        return LpOutcome::Infeasible;
    };
    let mut point: Vec<Q> = lo.iter().map(|&l| q(l)).collect();
    for (k, &j) in free.iter().enumerate() {
        point[j] += &y[k];
    }
    LpOutcome::Optimal { value: value + q(base_value), point }
}

/// Dense two-phase tableau simplex with Bland's rule:
/// minimize `cost.y` subject to `rows`, `0 <= y <= upper`.
fn simplex(rows: &[(Vec<i64>, i64)], upper: &[i64], cost: &[i64]) -> Option<(Q, Vec<Q>)> {
    let p = upper.len();
    let m = rows.len() + p;
    // Columns: y (p), surplus per constraint row, slack per bound row,
    // artificial per constraint row with positive rhs.
    let n_surplus = rows.len();
    let art_rows: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].1 > 0).collect();
    let n_cols = p + n_surplus + p + art_rows.len();
    let first_art = p + n_surplus + p;
    let mut t = Tableau { a: Vec::with_capacity(m + 1), basis: Vec::with_capacity(m), cols: n_cols };

    let mut art_iter = 0;
    for (i, (coeffs, rhs)) in rows.iter().enumerate() {
        let mut row = vec![Q::zero(); n_cols + 1];
        // coeffs . y - s = rhs
        let flip = *rhs <= 0;
        let sign = if flip { -1 } else { 1 };
        for (j, &a) in coeffs.iter().enumerate() {
            row[j] = q(a * sign);
        }
        row[p + i] = q(-sign);
        row[n_cols] = q(rhs * sign);
        if flip {
            t.basis.push(p + i);
        } else {
            let col = first_art + art_iter;
            art_iter += 1;
            row[col] = Q::one();
            t.basis.push(col);
        }
        t.a.push(row);
    }
    for (j, &u) in upper.iter().enumerate() {
        let mut row = vec![Q::zero(); n_cols + 1];
        row[j] = Q::one();
        row[p + n_surplus + j] = Q::one();
        row[n_cols] = q(u);
        t.basis.push(p + n_surplus + j);
        t.a.push(row);
    }

    if !art_rows.is_empty() {
        let mut phase1 = vec![Q::zero(); n_cols];
        for c in phase1.iter_mut().skip(first_art) {
            *c = Q::one();
        }
        let value = t.minimize(&phase1, n_cols);
        if value.is_positive() {
            return None;
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if t.basis[r] >= first_art {
                if let Some(c) = (0..first_art).find(|&c| !t.a[r][c].is_zero()) {
                    t.pivot(r, c);
                }
            }
        }
    }
    let mut phase2 = vec![Q::zero(); n_cols];
    for (j, &c) in cost.iter().enumerate() {
        phase2[j] = q(c);
    }
    let value = t.minimize(&phase2, first_art);
    let mut y = vec![Q::zero(); p];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < p {
            y[b] = t.a[r][n_cols].clone();
        }
    }
    Some((value, y))
}

struct Tableau {
    /// Constraint rows with the right-hand side in the last column.
    a: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for v in self.a[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.a[r]);
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.a[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Minimizes `cost` from the current basic feasible solution, letting
    /// only columns below `enter_limit` enter the basis.
    fn minimize(&mut self, cost: &[Q], enter_limit: usize) -> Q {
        loop {
            let duals: Vec<&Q> = self.basis.iter().map(|&b| &cost[b]).collect();
            let entering = (0..enter_limit).find(|&c| {
                if self.basis.contains(&c) {
                    return false;
                }
                let mut reduced = cost[c].clone();
                for (r, d) in duals.iter().enumerate() {
                    if !d.is_zero() && !self.a[r][c].is_zero() {
                        reduced -= *d * &self.a[r][c];
                    }
                }
                reduced.is_negative()
            });
            let Some(c) = entering else { break };
            let rhs = self.cols;
            let mut leave: Option<(usize, Q)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][c].is_positive() {
                    continue;
                }
                let ratio = &self.a[r][rhs] / &self.a[r][c];
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let (r, _) = leave.expect("variables are boxed, so the relaxation is bounded");
            self.pivot(r, c);
        }
        self.basis
            .iter()
            .enumerate()
            .map(|(r, &b)| &cost[b] * &self.a[r][self.cols])
            .fold(Q::zero(), |acc, v| acc + v)
    }
}

/// Direct 0-1 model of minimum defensive alliance: one variable per vertex,
/// `2 * sum_{u in N[v]} x_u >= (d(v) + 1) * x_v` for every vertex, at least
/// one vertex chosen, forbidden vertices pinned to zero.
///
/// The protection inequality is vacuous when `x_v = 0`, so no big-M term is
/// needed. `2 * ceil((d+1)/2) >= d + 1` makes it equivalent to the threshold
/// rule for integer points.
pub fn encode_min_alliance_ilp(g: &Graph) -> IlpProblem {
    let n = g.n();
    let bounds = g
        .vertices()
        .map(|v| (0, if g.is_forbidden(v) { 0 } else { 1 }))
        .collect();
    let mut prob = IlpProblem::new(vec![1; n], bounds);
    for v in g.vertices() {
        let mut coeffs = vec![0i64; n];
        for &u in g.neighbors(v) {
            coeffs[u] = 2;
        }
        debug_assert!(2 * protection_threshold(g.degree(v)) > g.degree(v));
        coeffs[v] = 2 - (g.degree(v) as i64 + 1);
        prob.add_ge(coeffs, 0);
    }
    prob.add_ge(vec![1; n], 1);
    prob
}
