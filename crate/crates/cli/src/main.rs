//! `defalliance`: verify, solve, and benchmark minimum defensive alliances.
//!
//! Graphs are DIMACS edge files (`p edge n m`, `e u v`, optional `f u` for
//! forbidden vertices), 1-indexed. Output is JSON on stdout. Exit status is 0
//! on success, 1 on invalid input, 2 when a solver produced an unverifiable
//! witness or disagreed with the oracle.

mod files;
mod solve;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use defalliance::{
    build_reduction, degree_audit, distance_to_clique_set, extract_dominating_set, generate, partition_clique_sets,
    twin_cover_set, verify_alliance, write_dimacs, write_dimacs_with_comments, GeneratorSpec,
};

use files::{external, parse_reduction_comments, read_graph, read_graph_file, read_set, reduction_comments};
use solve::{solve_record, Algo, ResultRecord, SolveRequest, Thresholds};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "defalliance", version, about = "Exact minimum defensive alliance solvers")]
struct Cli {
    /// Leave wall-clock times out of records, for byte-stable output.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct ThresholdArgs {
    /// Largest distance to clique dispatched to the dtc solver by `auto`.
    #[arg(long, default_value_t = 5)]
    dtc_threshold: usize,
    /// Largest twin cover dispatched to the twin-cover solver by `auto`.
    #[arg(long, default_value_t = 5)]
    tc_threshold: usize,
    /// Largest graph handed to exhaustive search.
    #[arg(long, default_value_t = 24)]
    guard: usize,
}

impl From<ThresholdArgs> for Thresholds {
    fn from(a: ThresholdArgs) -> Self {
        Thresholds { dtc: a.dtc_threshold, twin_cover: a.tc_threshold, guard: a.guard }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a vertex set is a defensive alliance.
    Verify {
        graph: PathBuf,
        /// Comma-separated 1-indexed ids, or a file containing them.
        set: String,
    },
    /// Compute a minimum defensive alliance.
    Solve {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Also run the reference solver and report agreement.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        thresholds: ThresholdArgs,
    },
    /// Report structural parameters.
    Params {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Reduce dominating set on a cubic graph to defensive alliance.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the target graph, with its source in comment lines, here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Recover a dominating set from an alliance of a reduction instance.
    Extract {
        /// An instance file written by `reduce --emit`.
        instance: PathBuf,
        alliance: String,
    },
    /// Generate a seeded random graph, e.g. `cubic:n=8`.
    Gen {
        spec: String,
        #[arg(long, env = "DEFALLIANCE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run solvers over every graph file in a directory, one JSON line each.
    Bench {
        corpus: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "auto")]
        algo: Vec<Algo>,
        #[arg(long)]
        oracle: bool,
        /// Where mismatching instances are written.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
        #[command(flatten)]
        thresholds: ThresholdArgs,
    },
}

/// Writes to stdout, exiting quietly if the reader has gone away.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

fn print_json<T: Serialize>(value: &T) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let timing = !cli.no_timing;
    match cli.command {
        Command::Verify { graph, set } => {
            let g = read_graph(&graph)?;
            let members = read_set(&set, g.n())?;
            let s = verify_alliance(&g, &members);
            let violations: Vec<_> = s
                .violations
                .iter()
                .map(|v| json!({"vertex": v.vertex + 1, "inside": v.inside, "required": v.required}))
                .collect();
            print_json(&json!({
                "members": external(&s.members),
                "size": s.size,
                "valid": s.valid,
                "violations": violations,
                "forbidden_members": external(&s.forbidden_members),
            }));
            Ok(0)
        }
        Command::Solve { graph, algo, oracle, thresholds } => {
            let g = read_graph(&graph)?;
            let req = SolveRequest {
                instance: &instance_id(&graph),
                algo,
                thresholds: thresholds.into(),
                with_oracle: oracle,
                timing,
            };
            let record = solve_record(&g, &req)?;
            print_json(&record);
            if !record.valid {
                return Err(CliError::Verification("solver returned a witness that fails verification".into()));
            }
            if record.matched == Some(false) {
                return Err(CliError::Verification("solver disagrees with the oracle".into()));
            }
            Ok(0)
        }
        Command::Params { graph, kmax } => {
            let g = read_graph(&graph)?;
            let d = distance_to_clique_set(&g, kmax);
            let t = twin_cover_set(&g, kmax);
            let z = match &t {
                Some(t) => Some(partition_clique_sets(&g, t).map_err(|e| CliError::Invalid(e.to_string()))?.max_clique_size()),
                None => None,
            };
            let describe = |s: &Option<Vec<usize>>| s.as_ref().map(|s| json!({"size": s.len(), "set": external(s)}));
            print_json(&json!({
                "n": g.n(),
                "m": g.m(),
                "max_degree": g.max_degree(),
                "kmax": kmax,
                "distance_to_clique": describe(&d),
                "twin_cover": describe(&t),
                "z": z,
            }));
            Ok(0)
        }
        Command::Reduce { graph, k, emit } => {
            let g = read_graph(&graph)?;
            let inst = build_reduction(&g, k).map_err(|e| CliError::Invalid(e.to_string()))?;
            let audit = degree_audit(&inst);
            if let Some(path) = &emit {
                let text = write_dimacs_with_comments(&inst.target, &reduction_comments(&g, k));
                std::fs::write(path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            }
            print_json(&json!({
                "n": g.n(),
                "k": k,
                "k_prime": inst.k_prime,
                "target_n": inst.target.n(),
                "target_m": inst.target.m(),
                "forbidden_count": inst.forbidden_count,
                "max_degree": inst.target.max_degree(),
                "degree_audit_ok": audit.is_empty(),
                "emitted": emit.as_ref().map(|p| p.display().to_string()),
            }));
            if !audit.is_empty() {
                return Err(CliError::Verification(format!("degree audit failed: {audit:?}")));
            }
            Ok(0)
        }
        Command::Extract { instance, alliance } => {
            let file = read_graph_file(&instance)?;
            let (source, k) = parse_reduction_comments(&file.comments)?;
            let inst = build_reduction(&source, k).map_err(|e| CliError::Invalid(e.to_string()))?;
            if inst.target != file.graph {
                return Err(CliError::Invalid("target graph does not match its recorded source".into()));
            }
            let members = read_set(&alliance, inst.target.n())?;
            let ds = extract_dominating_set(&inst, &members).map_err(|e| CliError::Invalid(e.to_string()))?;
            print_json(&json!({
                "k": k,
                "k_prime": inst.k_prime,
                "alliance_size": members.len(),
                "dominating_set": external(&ds),
                "size": ds.len(),
            }));
            Ok(0)
        }
        Command::Gen { spec, seed, out } => {
            let spec: GeneratorSpec = spec.parse().map_err(|e: defalliance::GenerateError| CliError::Invalid(e.to_string()))?;
            let g = generate(&spec, seed).map_err(|e| CliError::Invalid(e.to_string()))?;
            let text = write_dimacs_with_comments(&g, &[format!("generated {spec} seed={seed}")]);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
                None => emit(&text),
            }
            Ok(0)
        }
        Command::Bench { corpus, algo, oracle, counterexamples, thresholds } => {
            bench(&corpus, &algo, oracle, counterexamples.as_deref(), thresholds.into(), timing)
        }
    }
}

fn instance_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

#[derive(Serialize)]
struct BenchError {
    algorithm: String,
    instance: String,
    error: String,
}

fn bench(
    corpus: &Path,
    algos: &[Algo],
    oracle: bool,
    counterexamples: Option<&Path>,
    thresholds: Thresholds,
    timing: bool,
) -> Result<u8, CliError> {
    let entries = std::fs::read_dir(corpus).map_err(|e| CliError::Invalid(format!("{}: {e}", corpus.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort_by_key(|p| instance_id(p));
    let mut algos = algos.to_vec();
    algos.sort();
    algos.dedup();
    let mut failures = 0;
    for path in &paths {
        let id = instance_id(path);
        let g = read_graph(path)?;
        for &algo in &algos {
            let req = SolveRequest { instance: &id, algo, thresholds, with_oracle: oracle, timing };
            match solve_record(&g, &req) {
                Ok(record) => {
                    if record.is_failure() {
                        failures += 1;
                        if let Some(dir) = counterexamples {
                            write_counterexample(dir, &g, &record)?;
                        }
                    }
                    emit(&format!("{}\n", serde_json::to_string(&record).expect("serializable")));
                }
                Err(e) => {
                    let row = BenchError { algorithm: algo.name().into(), instance: id.clone(), error: e.to_string() };
                    emit(&format!("{}\n", serde_json::to_string(&row).expect("serializable")));
                }
            }
        }
    }
    Ok(if failures > 0 { 2 } else { 0 })
}

fn write_counterexample(dir: &Path, g: &defalliance::Graph, record: &ResultRecord) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Invalid(format!("{}: {e}", dir.display())))?;
    let name = format!("{}-{}", record.instance, record.algorithm.replace(':', "-"));
    let graph_path = dir.join(format!("{name}.dimacs"));
    std::fs::write(&graph_path, write_dimacs(g)).map_err(|e| CliError::Invalid(e.to_string()))?;
    let witnesses = json!({
        "instance": record.instance,
        "algorithm": record.algorithm,
        "solver_witness": record.witness,
        "solver_size": record.size,
        "solver_valid": record.valid,
        "oracle_witness": record.oracle_witness,
        "oracle_size": record.oracle_size,
    });
    let text = serde_json::to_string_pretty(&witnesses).expect("serializable");
    std::fs::write(dir.join(format!("{name}.json")), text).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use solve::Parameters;

    #[test]
    fn mismatch_writes_both_witnesses() {
        let dir = std::env::temp_dir().join(format!("defalliance-cx-{}", std::process::id()));
        let g = defalliance::parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        let record = ResultRecord {
            algorithm: "auto:lowdeg".into(),
            instance: "p3".into(),
            n: 3,
            m: 2,
            parameters: Parameters::default(),
            size: 2,
            witness: vec![1, 2],
            valid: true,
            wall_time_ms: None,
            oracle_size: Some(1),
            matched: Some(false),
            oracle_witness: Some(vec![1]),
        };
        assert!(record.is_failure());
        write_counterexample(&dir, &g, &record).unwrap();
        let graph = std::fs::read_to_string(dir.join("p3-auto-lowdeg.dimacs")).unwrap();
        assert_eq!(defalliance::parse_dimacs(&graph).unwrap(), g);
        let notes: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.join("p3-auto-lowdeg.json")).unwrap()).unwrap();
        assert_eq!(notes["solver_witness"], json!([1, 2]));
        assert_eq!(notes["oracle_witness"], json!([1]));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
