use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cnplace::graph::Snapshot;
use cnplace::netmodel::{sample_gev, GevParams};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cnplace")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_samples(dir: &Path, name: &str, xs: &[f64]) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, xs.iter().map(|x| format!("{x}\n")).collect::<String>()).unwrap();
    p
}

#[test]
fn communities_on_triangle() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["communities", "--input", s(&fixture("triangle.json")), "--out", s(out.path()), "--keep-leaves"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(out.path().join("communities.json")).unwrap()).unwrap();
    assert_eq!(v["sizes"], serde_json::json!([3]));
    assert_eq!(v["supersteps"], 3);
    assert!(v["manifest"]["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn malformed_input_exits_2() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["communities", "--input", s(&fixture("malformed.json")), "--out", s(out.path())]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_attributes_exit_3_with_list() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["elect", "--input", s(&fixture("mesh.json")), "--out", s(out.path()), "--weights", "b2"]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":latency_ms") || err.contains(":availability"), "{err}");
}

#[test]
fn absolute_class_elects_max_class_nodes() {
    let out = tempfile::tempdir().unwrap();
    let o = run(&["elect", "--input", s(&fixture("two_k5_bridge.json")), "--out", s(out.path()), "--weights", "absolute:b3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(out.path().join("placement.json")).unwrap()).unwrap();
    let leaders: Vec<&str> = v["communities"].as_array().unwrap().iter().map(|c| c["leader"].as_str().unwrap()).collect();
    // the servers n3 and n7 are the only strong nodes of each clique
    assert_eq!(leaders, vec!["n3", "n7"]);
}

#[test]
fn random_election_needs_a_seed() {
    let out = tempfile::tempdir().unwrap();
    let input = fixture("two_k5_bridge.json");
    let args = ["elect", "--input", s(&input), "--out", s(out.path()), "--weights", "random"];
    assert_eq!(code(&run(&args)), 1);
    let mut with_seed = args.to_vec();
    with_seed.extend(["--seed", "3"]);
    assert_eq!(code(&run(&with_seed)), 0);
}

#[test]
fn fit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let few = write_samples(dir.path(), "few.txt", &[1.0, 2.0, 3.0]);
    assert_eq!(code(&run(&["fit", "--samples", s(&few), "--family", "gev"])), 4);
    let flat = write_samples(dir.path(), "flat.txt", &[2.0; 10]);
    assert_eq!(code(&run(&["fit", "--samples", s(&flat), "--family", "kappa4"])), 4);
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1\n2\nx\n").unwrap();
    assert_eq!(code(&run(&["fit", "--samples", s(&bad), "--family", "gev"])), 2);
}

#[test]
fn kappa_fit_on_gev_data_nests() {
    let dir = tempfile::tempdir().unwrap();
    let xs = sample_gev(&GevParams::new(10.0, 3.0, 0.15).unwrap(), 20_000, 8);
    let path = write_samples(dir.path(), "rtt.txt", &xs);
    let o = run(&["fit", "--samples", s(&path), "--family", "kappa4", "--out", s(dir.path())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("fit_kappa4.json")).unwrap()).unwrap();
    assert_eq!(v["family"], "kappa4");
    assert!(v["params"]["h"].as_f64().unwrap().abs() < 0.1, "{v}");
    assert!(v["ks"].as_f64().unwrap() < 0.02);
}

fn fit_models(dir: &Path) -> (PathBuf, PathBuf) {
    let bw = write_samples(dir, "bw.txt", &sample_gev(&GevParams::new(30.0, 10.0, 0.1).unwrap(), 4000, 1));
    let rtt = write_samples(dir, "rtt.txt", &sample_gev(&GevParams::new(10.0, 3.0, -0.1).unwrap(), 4000, 2));
    let models = dir.join("models");
    assert_eq!(code(&run(&["fit", "--samples", s(&bw), "--family", "kappa4", "--out", s(&models)])), 0);
    assert_eq!(code(&run(&["fit", "--samples", s(&rtt), "--family", "gev", "--out", s(&models)])), 0);
    (models.join("fit_kappa4.json"), models.join("fit_gev.json"))
}

#[test]
fn synth_keeps_measured_values() {
    let dir = tempfile::tempdir().unwrap();
    let (bw, rtt) = fit_models(dir.path());
    let input = fixture("two_k5_bridge.json");
    let o = run(&["synth", "--input", s(&input), "--out", s(dir.path()), "--seed", "5", "--bw", s(&bw), "--rtt", s(&rtt)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let original: Snapshot = serde_json::from_slice(&std::fs::read(&input).unwrap()).unwrap();
    let synth: Snapshot = serde_json::from_slice(&std::fs::read(dir.path().join("snapshot_synth.json")).unwrap()).unwrap();
    assert!(synth.manifest.is_some());
    assert_eq!(synth.nodes, original.nodes);
    assert_eq!(synth.links, original.links);
}

#[test]
fn synth_fills_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let (bw, rtt) = fit_models(dir.path());
    let o = run(&["synth", "--input", s(&fixture("mesh.json")), "--out", s(dir.path()), "--seed", "5", "--bw", s(&bw), "--rtt", s(&rtt)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let synth: Snapshot = serde_json::from_slice(&std::fs::read(dir.path().join("snapshot_synth.json")).unwrap()).unwrap();
    assert!(synth.links.iter().all(|l| l.bandwidth_mbps.unwrap() > 0.0 && l.rtt_ms.unwrap() > 0.0));
    assert!(synth.nodes.iter().all(|n| n.availability_pct.is_some() && n.latency_ms.is_some()));
    assert!(synth.links.iter().any(|l| l.synthetic));
    // the filled snapshot now satisfies attribute-hungry weights
    let path = dir.path().join("snapshot_synth.json");
    assert_eq!(code(&run(&["elect", "--input", s(&path), "--out", s(dir.path()), "--weights", "b2"])), 0);
}

#[test]
fn invalid_model_parameters_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let (bw, _) = fit_models(dir.path());
    let bad = dir.path().join("bad_gev.json");
    std::fs::write(&bad, r#"{"family":"gev","params":{"mu":1.0,"sigma":-2.0,"k":0.1},"lmoments":{"l1":1.0,"l2":1.0,"t3":0.1,"t4":0.1,"n":0},"ks":0.0}"#).unwrap();
    let o = run(&["synth", "--input", s(&fixture("mesh.json")), "--out", s(dir.path()), "--seed", "5", "--bw", s(&bw), "--rtt", s(&bad)]);
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn report_with_baseline_file_and_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("two_k5_bridge.csv");
    let base = dir.path().join("zones.json");
    std::fs::write(&base, r#"[{"label":0,"members":["n0","n1","n2","n5","n6"]},{"label":1,"members":["n3","n4","n7","n8","n9","leaf"]}]"#).unwrap();
    let o = run(&["report", "--input", s(&input), "--format", "csv", "--out", s(dir.path()), "--baseline", s(&base), "--include-leader"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("# tool=cnplace"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("baseline,")).count(), 2);
    for f in ["report.json", "ecdf_hops.csv", "ecdf_bw.csv", "ecdf_rtt.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}
