use std::path::Path;
use std::process::{Command, Output};

fn motifnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motifnet")).args(args).output().expect("binary runs")
}

fn motifnet_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motifnet"))
        .args(args)
        .env("MOTIFNET_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn build_document() {
    let doc = json(&motifnet(&["build", "--motif", "m1", "--k", "3", "--format", "json"]));
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["motif"], "m1");
    assert_eq!(doc["k"], 3);
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 15);
    assert_eq!(doc["basic_edges"].as_array().unwrap().len(), 27);
    assert_eq!(doc["slots"].as_array().unwrap().len(), 12);
    let node = &doc["nodes"][0];
    assert_eq!(node["external"], true);
    assert_eq!(node["level_class"], 3);
    assert!(doc["slots"][0]["endpoints"].is_array());
    assert!(doc["slots"][0]["creation_level"].is_u64());
}

#[test]
fn sample_edge_list_is_tagged() {
    let doc = json(&motifnet(&["sample", "--motif", "m3", "--k", "3", "--p", "1"]));
    let edges = doc["edges"].as_array().unwrap();
    let basic = edges.iter().filter(|e| e["kind"] == "basic").count();
    let deco = edges.iter().filter(|e| e["kind"] == "decoration").count();
    assert_eq!((basic, deco), (64, 20));
    let csv = motifnet(&["sample", "--motif", "m3", "--k", "2", "--p", "0", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("u,v,kind"));
    assert_eq!(text.lines().count(), 1 + 16);
}

#[test]
fn csv_headers() {
    let degree = motifnet(&["degree-stats", "--motif", "m2", "--k", "3", "--samples", "5", "--format", "csv"]);
    assert!(degree.status.success());
    assert!(String::from_utf8(degree.stdout).unwrap().starts_with("degree,empirical_prob,model_prob\n"));

    let structure = motifnet(&["structure", "--motif", "m1", "--k", "3", "--samples", "3", "--format", "csv"]);
    let text = String::from_utf8(structure.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,Q_k,diam,boundary_ratio"));
    assert_eq!(lines.count(), 3);

    let phase = motifnet(&["ising-phase", "--L", "0.1", "--p", "0.5", "--K", "0.2", "--format", "csv"]);
    let text = String::from_utf8(phase.stdout).unwrap();
    assert!(text.starts_with("L,p,K,t,x1,x_star1,x_star2,K_star,verdict\n"));
    assert!(text.trim_end().ends_with(",unordered"));
}

#[test]
fn ising_phase_reports_verdict_and_critical_coupling() {
    let out = motifnet(&["ising-phase", "--L", "0.1", "--p", "0.5", "--K", "0.2"]);
    let doc = json(&out);
    let row = &doc["rows"][0];
    assert_eq!(row["verdict"], "unordered");
    assert!(row["K_star"].as_f64().unwrap() > 0.2);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("verdict: unordered K*="));
}

#[test]
fn negative_couplings_parse() {
    let doc = json(&motifnet(&["ising-iterate", "--K", "-0.3", "--L", "-1", "--p", "0.4", "--steps", "10"]));
    assert_eq!(doc["x"].as_array().unwrap().len(), 10);
    assert_eq!(doc["diameter_Y"].as_array().unwrap().len(), 11);
    assert_eq!(doc["dobrushin_S"].as_array().unwrap().len(), 10);
    assert_eq!(doc["verdict"], "unordered");
}

#[test]
fn divergent_trajectory_serializes_nulls() {
    let doc = json(&motifnet(&["ising-iterate", "--K", "0", "--L", "2", "--p", "1", "--steps", "400"]));
    let xs = doc["x"].as_array().unwrap();
    assert!(xs.last().unwrap().is_null());
    assert_eq!(doc["verdict"], "ordered");
}

#[test]
fn phase_diagram_rows_in_grid_order() {
    let out = motifnet(&[
        "phase-diagram", "--K-min", "-0.2", "--K-max", "0.2", "--K-step", "0.2", "--L-min", "0", "--L-max", "0.5",
        "--L-step", "0.5", "--p-min", "0.5", "--p-max", "1", "--p-step", "0.5", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 * 2 * 3);
    let keys: Vec<(f64, f64, f64)> =
        rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let args = ["degree-stats", "--motif", "m4", "--k", "4", "--samples", "50", "--seed", "7"];
    let one = motifnet_threads(&args, "1");
    let many = motifnet_threads(&args, "4");
    let again = motifnet_threads(&args, "4");
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(many.stdout, again.stdout);

    let args = ["structure", "--motif", "m5", "--k", "3", "--samples", "6", "--p", "0.3"];
    assert_eq!(motifnet_threads(&args, "1").stdout, motifnet_threads(&args, "3").stdout);
}

#[test]
fn atomic_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graph.json");
    let p = path.to_str().unwrap();
    let out = motifnet(&["build", "--motif", "m2", "--k", "2", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(doc["nodes"].as_array().unwrap().len(), 10);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run = |p: &Path| motifnet(&["verify", "--out", p.to_str().unwrap()]);
    let first = run(&a);
    let second = run(&b);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stdout));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let table = String::from_utf8(first.stdout).unwrap();
    assert!(table.lines().all(|l| l.starts_with("PASS") || l.ends_with("0 failed")));
}

#[test]
fn exit_codes() {
    assert_eq!(motifnet(&["build", "--motif", "m7", "--k", "2"]).status.code(), Some(1));
    assert_eq!(motifnet(&["build", "--motif", "m1", "--k", "0"]).status.code(), Some(1));
    assert_eq!(motifnet(&["sample", "--motif", "m1", "--k", "2", "--p", "1.5"]).status.code(), Some(1));
    assert_eq!(motifnet(&["degree-stats", "--motif", "m1", "--k", "2", "--samples", "0"]).status.code(), Some(1));
    assert_eq!(motifnet(&["build", "--motif", "m1", "--k", "2", "--format", "csv"]).status.code(), Some(1));
    assert_eq!(motifnet(&["phase-diagram", "--K-step", "0"]).status.code(), Some(1));
    assert_eq!(motifnet(&["nonsense"]).status.code(), Some(1));
    assert_eq!(motifnet(&["build", "--motif", "m5", "--k", "40"]).status.code(), Some(2));
    assert_eq!(motifnet(&["structure", "--motif", "m4", "--k", "25"]).status.code(), Some(2));
    assert_eq!(motifnet(&["--help"]).status.code(), Some(0));
    assert_eq!(motifnet(&["--version"]).status.code(), Some(0));
    assert_eq!(motifnet_threads(&["build", "--motif", "m1", "--k", "2"], "zero").status.code(), Some(1));
}
