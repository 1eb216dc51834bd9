use std::f64::consts::PI;

use corona_walk::cli::{run_cli, CommandResult};
use serde_json::Value;

fn run(args: &[&str]) -> CommandResult {
    run_cli(std::iter::once("corona-walk").chain(args.iter().copied()))
}

fn json(r: &CommandResult) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("bad json {e}: {:?}", r))
}

#[test]
fn build_corona_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c4k5.json");
    let r = run(&["build", "--g1", "cycle:4", "--g2", "complete:5", "--out", out.to_str().unwrap()]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["n"], 24);
    // 4 cycle edges + 4·10 copy edges + 4·2·5 apex-copy edges
    assert_eq!(v["edges"].as_array().unwrap().len(), 84);
}

#[test]
fn graph_file_roundtrip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(run(&["build", "--g1", "path:3", "--g2", "cycle:3", "--out", a.to_str().unwrap()]).exit_code, 0);
    assert_eq!(run(&["build", "--graph", a.to_str().unwrap(), "--out", b.to_str().unwrap()]).exit_code, 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn check_pst_on_cycle_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c4.json");
    std::fs::write(&f, r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#).unwrap();
    let r = run(&["check-pst", "--graph", f.to_str().unwrap(), "--u", "0", "--v", "2"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["verdict"], "PST");
    assert!((v["tau0"].as_f64().unwrap() - PI / 2.0).abs() < 1e-12);

    let r = run(&["check-pst", "--graph", f.to_str().unwrap(), "--u", "0", "--v", "1"]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(json(&r)["verdict"], "NoPST");
}

#[test]
fn check_pst_vertex_out_of_range_is_usage_error() {
    assert_eq!(run(&["check-pst", "--g1", "cycle:4", "--u", "0", "--v", "9"]).exit_code, 2);
}

#[test]
fn search_pgst_theorem53() {
    let r = run(&["search-pgst", "--g1", "cycle:4", "--g2", "complete:5", "--u", "0", "--v", "2", "--epsilon", "0.01"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["construction"], "Theorem53");
    assert_eq!(v["alpha"], 162758);
    assert_eq!(v["t0"]["coeff_of_pi"], "651033");
    assert!(v["fidelity"].as_f64().unwrap() >= 0.99);
}

#[test]
fn search_pgst_budget_and_hypothesis_exit_codes() {
    let r = run(&[
        "search-pgst", "--g1", "cycle:4", "--g2", "complete:5", "--u", "0", "--v", "2",
        "--epsilon", "1e-5", "--alpha-max", "1000",
    ]);
    assert_eq!(r.exit_code, 3);
    let r = run(&[
        "search-pgst", "--g1", "path:3", "--g2", "complete:2", "--u", "0", "--v", "2",
        "--construction", "theorem53",
    ]);
    assert_eq!(r.exit_code, 1);
}

#[test]
fn search_pgst_theorem51_auto() {
    let r = run(&["search-pgst", "--g1", "cycle:4", "--g2", "empty:1", "--u", "0", "--v", "2"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert_eq!(json(&r)["construction"], "Theorem51");
}

#[test]
fn verify_passes_on_corona() {
    for (g1, g2) in [("cycle:4", "complete:5"), ("path:3", "cycle:3"), ("complete:3", "cycle:4")] {
        let r = run(&["verify", "--g1", g1, "--g2", g2]);
        assert_eq!(r.exit_code, 0, "{g1} {g2}: {}{}", r.stdout, r.stderr);
        assert_eq!(json(&r)["passed"], true);
    }
    // not a corona
    assert_eq!(run(&["verify", "--g1", "cycle:5"]).exit_code, 2);
}

#[test]
fn spectrum_reports_corona_records() {
    let r = run(&["spectrum", "--g1", "cycle:4", "--g2", "complete:5"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["n"], 24);
    let total: u64 = v["eigenvalues"].as_array().unwrap().iter().map(|e| e["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 24);
    assert!(v["corona"].as_array().unwrap().iter().any(|e| e["origin"] == "special-zero"));
}

#[test]
fn fidelity_csv() {
    let r = run(&["fidelity", "--g1", "cycle:4", "--u", "0", "--v", "2", "--t-max", "3.141592653589793", "--steps", "3"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "t,fidelity");
    assert_eq!(lines.len(), 4);
    let mid: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((mid - 1.0).abs() < 1e-12);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["check-pst", "--g1", "cycle:4", "--u", "0"]).exit_code, 2);
    assert_eq!(run(&["fidelity", "--g1", "cycle:4", "--u", "0", "--v", "1", "--nope"]).exit_code, 2);
    assert_eq!(run(&["build", "--g1", "cycle:4", "--graph", "x.json"]).exit_code, 2);
    assert_eq!(run(&["build", "--graph", "/nonexistent/x.json"]).exit_code, 2);
    assert_eq!(run(&["--threads", "0", "build", "--g1", "cycle:4"]).exit_code, 2);
}

#[test]
fn threads_flag_is_accepted() {
    let r = run(&["--threads", "2", "check-pst", "--g1", "path:3", "--u", "0", "--v", "2"]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
}
