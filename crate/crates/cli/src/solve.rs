//! Algorithm dispatch and the per-instance result record.

use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use defalliance::ilp::IlpStatus;
use defalliance::{
    brute_force_min_alliance_guarded, distance_to_clique_set, encode_min_alliance_ilp, partition_clique_sets,
    solve_dtc, solve_ilp, solve_min_alliance_lowdeg, solve_twincover, twin_cover_set, verify_alliance,
    AllianceSolution, Graph, Vertex,
};

use crate::files::external;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Brute,
    Lowdeg,
    Ilp,
    Dtc,
    Twincover,
    Auto,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::Lowdeg => "lowdeg",
            Algo::Ilp => "ilp",
            Algo::Dtc => "dtc",
            Algo::Twincover => "twincover",
            Algo::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    pub dtc: usize,
    pub twin_cover: usize,
    pub guard: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Parameters {
    pub max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_to_clique: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twin_cover: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
}

/// One solver run on one instance. Witness ids are 1-indexed.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub algorithm: String,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub parameters: Parameters,
    pub size: usize,
    pub witness: Vec<usize>,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_size: Option<usize>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matched: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_witness: Option<Vec<usize>>,
}

impl ResultRecord {
    /// A record that a correct build never produces.
    pub fn is_failure(&self) -> bool {
        !self.valid || self.matched == Some(false)
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn no_alliance() -> CliError {
    CliError::Invalid("no defensive alliance avoids the forbidden vertices".into())
}

pub fn run_brute(g: &Graph, guard: usize) -> Result<AllianceSolution, CliError> {
    brute_force_min_alliance_guarded(g, None, guard).map_err(invalid)?.ok_or_else(no_alliance)
}

pub fn run_ilp(g: &Graph) -> Result<AllianceSolution, CliError> {
    let sol = solve_ilp(&encode_min_alliance_ilp(g)).map_err(invalid)?;
    if sol.status == IlpStatus::Infeasible {
        return Err(no_alliance());
    }
    let members: Vec<Vertex> = (0..g.n()).filter(|&v| sol.assignment[v] == 1).collect();
    Ok(verify_alliance(g, &members))
}

/// Runs `algo`, resolving `auto`; returns the concrete algorithm used.
pub fn run(g: &Graph, algo: Algo, th: Thresholds, params: &mut Parameters) -> Result<(Algo, AllianceSolution), CliError> {
    params.max_degree = g.max_degree();
    let concrete = match algo {
        Algo::Auto => choose(g, th, params),
        other => other,
    };
    let solution = match concrete {
        Algo::Brute => run_brute(g, th.guard)?,
        Algo::Ilp => run_ilp(g)?,
        Algo::Lowdeg => solve_min_alliance_lowdeg(g).map_err(invalid)?,
        Algo::Dtc => {
            let d = distance_to_clique_set(g, g.n()).expect("the whole vertex set is a modulator");
            params.distance_to_clique = Some(d.len());
            solve_dtc(g, &d).map_err(invalid)?
        }
        Algo::Twincover => {
            let t = twin_cover_set(g, g.n()).expect("the whole vertex set is a twin cover");
            params.twin_cover = Some(t.len());
            params.z = Some(partition_clique_sets(g, &t).map_err(invalid)?.max_clique_size());
            solve_twincover(g, &t).map_err(invalid)?
        }
        Algo::Auto => unreachable!("resolved above"),
    };
    Ok((concrete, solution))
}

fn choose(g: &Graph, th: Thresholds, params: &mut Parameters) -> Algo {
    if g.max_degree() <= 5 && !g.has_forbidden() && g.n() > 0 {
        return Algo::Lowdeg;
    }
    if !g.has_forbidden() && g.n() > 0 {
        if let Some(d) = distance_to_clique_set(g, th.dtc) {
            params.distance_to_clique = Some(d.len());
            return Algo::Dtc;
        }
        if let Some(t) = twin_cover_set(g, th.twin_cover) {
            params.twin_cover = Some(t.len());
            return Algo::Twincover;
        }
    }
    if g.n() <= th.guard {
        Algo::Brute
    } else {
        Algo::Ilp
    }
}

/// The reference answer: exhaustive search within the guard, else the ILP.
pub fn oracle(g: &Graph, guard: usize) -> Result<AllianceSolution, CliError> {
    if g.n() <= guard {
        run_brute(g, guard)
    } else {
        run_ilp(g)
    }
}

pub struct SolveRequest<'a> {
    pub instance: &'a str,
    pub algo: Algo,
    pub thresholds: Thresholds,
    pub with_oracle: bool,
    pub timing: bool,
}

pub fn solve_record(g: &Graph, req: &SolveRequest) -> Result<ResultRecord, CliError> {
    let mut params = Parameters::default();
    let start = Instant::now();
    let (used, solution) = run(g, req.algo, req.thresholds, &mut params)?;
    let elapsed = start.elapsed();
    // Re-verify independently of whatever the solver reported.
    let check = verify_alliance(g, &solution.members);
    let algorithm = match req.algo {
        Algo::Auto => format!("auto:{}", used.name()),
        other => other.name().to_string(),
    };
    let mut record = ResultRecord {
        algorithm,
        instance: req.instance.to_string(),
        n: g.n(),
        m: g.m(),
        parameters: params,
        size: check.size,
        witness: external(&check.members),
        valid: check.valid,
        wall_time_ms: req.timing.then_some(elapsed.as_secs_f64() * 1e3),
        oracle_size: None,
        matched: None,
        oracle_witness: None,
    };
    if req.with_oracle {
        let reference = oracle(g, req.thresholds.guard)?;
        record.matched = Some(reference.size == record.size);
        record.oracle_size = Some(reference.size);
        record.oracle_witness = Some(external(&reference.members));
    }
    Ok(record)
}
