//! End-to-end checks of the command-line surface: outputs, file formats,
//! and exit codes (0 success, 2 parameter error, 3 unknown verdict).

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_turannical")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("turannical-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn turan_prints_number() {
    let out = run(&["turan", "--r", "3", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "6");
}

#[test]
fn turm_prints_number_and_emits_graph() {
    let dir = workdir("turm");
    let graph_path = dir.join("turm.json");
    let out = run(&[
        "turm",
        "--r",
        "3",
        "--n",
        "10",
        "--m",
        "2",
        "--emit-graph",
        graph_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "31");
    let g = turannical::io::parse_graph_json(&std::fs::read_to_string(&graph_path).unwrap())
        .unwrap();
    assert_eq!(g.edge_count(), 31);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_flag_exits_2() {
    let out = run(&["turan", "--r", "3", "--n", "5", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn parameter_error_exits_2() {
    let out = run(&["turan", "--r", "2", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parameter"));
}

#[test]
fn detect_reports_witness() {
    let dir = workdir("detect");
    let fpath = dir.join("f.json");
    let gpath = dir.join("g.json");
    std::fs::write(&fpath, r#"{"r":3,"n":3,"edges":[[0,1,2]]}"#).unwrap();
    std::fs::write(&gpath, r#"{"n":3,"edges":[[0,1],[0,2],[1,2]]}"#).unwrap();
    let out = run(&[
        "detect",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--graph",
        gpath.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["detected"], true);
    assert_eq!(v["witness_hyperedge"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["detected_count"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decide_empty_hypergraph_is_not_turannical() {
    let dir = workdir("decide");
    let fpath = dir.join("empty.json");
    std::fs::write(&fpath, r#"{"r":3,"n":5,"edges":[]}"#).unwrap();
    let out = run(&["decide", "--hypergraph", fpath.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["max_undetected_edges"], 10);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decide_budget_exhaustion_exits_3() {
    let dir = workdir("decide3");
    let fpath = dir.join("f.json");
    // Complete K^(3)_9 with a tiny budget: certificates alone cannot close
    // the optimum gap, so the verdict is unknown.
    let f = turannical::UniformHypergraph::complete(3, 9).unwrap();
    std::fs::write(&fpath, turannical::io::emit_hypergraph_json(&f)).unwrap();
    let out = run(&[
        "decide",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "unknown");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn decide_relative_and_eps() {
    let dir = workdir("decide-rel");
    let fpath = dir.join("f.json");
    let gpath = dir.join("g.json");
    let f = turannical::UniformHypergraph::complete(3, 4).unwrap();
    std::fs::write(&fpath, turannical::io::emit_hypergraph_json(&f)).unwrap();
    std::fs::write(
        &gpath,
        turannical::io::emit_graph_json(&turannical::Graph::complete(4)),
    )
    .unwrap();
    let out = run(&[
        "decide",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--graph",
        gpath.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["baseline"]["kind"], "max-partition");

    let out = run(&[
        "decide",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--eps",
        "0.1",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["baseline"]["kind"], "eps-turan");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classify_clique() {
    let dir = workdir("classify");
    let gpath = dir.join("g.json");
    std::fs::write(
        &gpath,
        turannical::io::emit_graph_json(&turannical::Graph::complete(10)),
    )
    .unwrap();
    let out = run(&[
        "classify",
        "--graph",
        gpath.to_str().unwrap(),
        "--r",
        "3",
        "--eps",
        "0.006944444444444444",
        "--delta",
        "0.01",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"]["case"], "vertex-heavy");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn mubound_runs() {
    let dir = workdir("mubound");
    let fpath = dir.join("f.json");
    let f = turannical::UniformHypergraph::complete(3, 6).unwrap();
    std::fs::write(&fpath, turannical::io::emit_hypergraph_json(&f)).unwrap();
    let out = run(&[
        "mubound",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--q",
        "0.5",
        "--i",
        "1",
        "--trials",
        "20",
        "--seed",
        "9",
        "--K",
        "50",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["estimate"]["mean"].as_f64().unwrap() >= 0.0);
    assert!(v["bound"].as_f64().unwrap() > 0.0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witness_subcommands() {
    let dir = workdir("witness");
    let fpath = dir.join("f.json");
    std::fs::write(&fpath, r#"{"r":3,"n":6,"edges":[]}"#).unwrap();
    let out = run(&[
        "witness",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--kind",
        "sparse",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified_undetected"], true);
    assert_eq!(v["edges"], 10); // t_3(6) + 1
    let out = run(&[
        "witness",
        "--hypergraph",
        fpath.to_str().unwrap(),
        "--kind",
        "deletion",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["edges"], 15); // K_6 untouched
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_requires_out_and_writes_manifest() {
    let dir = workdir("scan");
    let config = dir.join("scan.json");
    std::fs::write(
        &config,
        r#"{"r":3,"n":6,"property":{"kind":"eps","eps":0.25},"grid":{"p":[0.2,0.8]},"trials":10,"seed":5,"mode":"filter"}"#,
    )
    .unwrap();
    // Without --out: parameter error.
    let out = run(&["scan", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let csv_path = dir.join("curve.csv");
    let out = run(&[
        "--out",
        csv_path.to_str().unwrap(),
        "scan",
        "--config",
        config.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let points = turannical::io::parse_curve_csv(&csv).unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0].trials, 10);
    let manifest_path = dir.join("curve.manifest.json");
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["master_seed"], 5);
    assert_eq!(
        manifest["outputs"][0]["sha256"].as_str().unwrap(),
        turannical::io::sha256_hex(csv.as_bytes())
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn scan_rejects_vacuous_eps_for_g() {
    let dir = workdir("scan-vac");
    let config = dir.join("scan.json");
    // eps >= 1/(r-2) makes the relative premise unreachable.
    std::fs::write(
        &config,
        r#"{"r":3,"n":6,"property":{"kind":"eps-for-g","eps":1.5},"grid":{"p":[0.5],"q":[0.5]},"trials":5,"seed":1,"mode":"solver"}"#,
    )
    .unwrap();
    let csv_path = dir.join("curve.csv");
    let out = run(&[
        "--out",
        csv_path.to_str().unwrap(),
        "scan",
        "--config",
        config.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("never met"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_json_names_path_and_offset() {
    let dir = workdir("badjson");
    let gpath = dir.join("bad.json");
    std::fs::write(&gpath, r#"{"n":3,"edges":[[0,"x"]]}"#).unwrap();
    let out = run(&[
        "classify",
        "--graph",
        gpath.to_str().unwrap(),
        "--r",
        "3",
        "--eps",
        "0.1",
        "--delta",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte"), "{err}");
    assert!(err.contains("edges"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}
