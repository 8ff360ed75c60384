use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use defalliance::{build_reduction, alliance_from_dominating_set, parse_dimacs};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defalliance"))
        .args(args)
        .env_remove("DEFALLIANCE_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_sample9_lowdeg() {
    let out = cli(&["solve", path_str(&data("sample9.dimacs")), "--algo", "lowdeg", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 2);
    assert_eq!(v["valid"], true);
    assert_eq!(v["match"], true);
    assert_eq!(v["witness"], serde_json::json!([1, 2]));
}

#[test]
fn every_algorithm_agrees_on_sample9() {
    for algo in ["brute", "lowdeg", "ilp", "dtc", "twincover", "auto"] {
        let out = cli(&["solve", path_str(&data("sample9.dimacs")), "--algo", algo, "--oracle"]);
        assert_eq!(out.status.code(), Some(0), "{algo}: {}", String::from_utf8_lossy(&out.stderr));
        let v = json(&out);
        assert_eq!(v["size"], 2, "{algo}");
        assert_eq!(v["match"], true, "{algo}");
    }
}

#[test]
fn auto_dispatch() {
    let out = cli(&["solve", path_str(&data("sample9.dimacs"))]);
    assert_eq!(json(&out)["algorithm"], "auto:lowdeg");
    assert!(json(&out).get("match").is_none());
    let dir = tempfile::tempdir().unwrap();
    // K7 has degree 6 and is already a clique.
    let mut k7 = String::from("p edge 7 21\n");
    for a in 1..=7 {
        for b in a + 1..=7 {
            k7.push_str(&format!("e {a} {b}\n"));
        }
    }
    let path = dir.path().join("k7.dimacs");
    std::fs::write(&path, k7).unwrap();
    let v = json(&cli(&["solve", path_str(&path)]));
    assert_eq!(v["algorithm"], "auto:dtc");
    assert_eq!(v["size"], 4);
    let v = json(&cli(&["solve", path_str(&path), "--dtc-threshold", "0", "--tc-threshold", "0", "--guard", "3"]));
    assert_eq!(v["algorithm"], "auto:dtc");
    // Forbidden vertices rule out the parameterized solvers.
    let forb = dir.path().join("forb.dimacs");
    std::fs::write(&forb, "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\nf 1\n").unwrap();
    let v = json(&cli(&["solve", path_str(&forb), "--guard", "2"]));
    assert_eq!(v["algorithm"], "auto:ilp");
    assert_eq!(v["witness"], serde_json::json!([2, 3]));
}

#[test]
fn verify_observation_set() {
    let out = cli(&["verify", path_str(&data("sample9.dimacs")), "5,6,7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
    let out = cli(&["verify", path_str(&data("sample9.dimacs")), "{5}"]);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["vertex"], 5);
    assert_eq!(v["violations"][0]["required"], 3);
}

#[test]
fn invalid_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dimacs");
    std::fs::write(&bad, "p edge 2 1\ne 1 3\n").unwrap();
    let out = cli(&["solve", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = cli(&["verify", path_str(&data("sample9.dimacs")), "0,12"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cli(&["solve", path_str(&data("sample9.dimacs")), "--algo", "brute", "--guard", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cli(&["reduce", path_str(&data("sample9.dimacs")), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reduce_and_extract_cubic6() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("target.dimacs");
    let out = cli(&["reduce", path_str(&data("cubic6.dimacs")), "--k", "2", "--emit", path_str(&target)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["k_prime"], 40);
    assert_eq!(v["degree_audit_ok"], true);
    assert_eq!(v["max_degree"], 6);

    let source = parse_dimacs(&std::fs::read_to_string(data("cubic6.dimacs")).unwrap()).unwrap();
    let inst = build_reduction(&source, 2).unwrap();
    let witness = alliance_from_dominating_set(&inst, &[1, 4]).unwrap();
    let ids: Vec<String> = witness.members.iter().map(|v| (v + 1).to_string()).collect();
    let set_file = dir.path().join("alliance.txt");
    std::fs::write(&set_file, ids.join(" ")).unwrap();
    let out = cli(&["extract", path_str(&target), path_str(&set_file)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["dominating_set"], serde_json::json!([2, 5]));
    assert_eq!(v["alliance_size"], 40);

    // A set that is not an alliance is rejected.
    let out = cli(&["extract", path_str(&target), "1,2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_is_seeded() {
    let a = cli(&["gen", "cubic:n=10", "--seed", "7"]);
    let b = cli(&["gen", "cubic:n=10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let g = parse_dimacs(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert!(g.vertices().all(|v| g.degree(v) == 3));
    let env = Command::new(env!("CARGO_BIN_EXE_defalliance"))
        .args(["gen", "cubic:n=10"])
        .env("DEFALLIANCE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, b.stdout);
    assert_eq!(cli(&["gen", "cubic:n=7"]).status.code(), Some(1));
    assert_eq!(cli(&["gen", "nonsense"]).status.code(), Some(1));
}

#[test]
fn bench_is_sorted_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (name, spec, seed) in [("b", "connected:n=9,dmax=4,extra=4", "1"), ("a", "clique-attach:clique=6,outside=2", "2")] {
        let out = cli(&["gen", spec, "--seed", seed, "--out", path_str(&dir.path().join(format!("{name}.dimacs")))]);
        assert_eq!(out.status.code(), Some(0));
    }
    let args = ["bench", path_str(dir.path()), "--algo", "ilp,brute", "--oracle", "--no-timing"];
    let first = cli(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, cli(&args).stdout);
    let rows: Vec<Value> = String::from_utf8(first.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let order: Vec<(String, String)> = rows
        .iter()
        .map(|r| (r["instance"].as_str().unwrap().into(), r["algorithm"].as_str().unwrap().into()))
        .collect();
    assert_eq!(
        order,
        [("a", "brute"), ("a", "ilp"), ("b", "brute"), ("b", "ilp")].map(|(i, a)| (i.to_string(), a.to_string()))
    );
    assert!(rows.iter().all(|r| r["match"] == true && r["valid"] == true));
    // Precondition failures become error rows rather than aborting.
    let out = cli(&["bench", path_str(dir.path()), "--algo", "lowdeg", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn params_sample9() {
    let v = json(&cli(&["params", path_str(&data("sample9.dimacs"))]));
    assert_eq!(v["max_degree"], 5);
    assert_eq!(v["twin_cover"]["size"], 3);
    assert_eq!(v["distance_to_clique"]["size"], 4);
    let v = json(&cli(&["params", path_str(&data("sample9.dimacs")), "--kmax", "2"]));
    assert!(v["twin_cover"].is_null());
}
