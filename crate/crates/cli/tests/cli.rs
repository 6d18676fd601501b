use std::process::{Command, Output};

use serde_json::Value;
use treenest::SubdivisionTrace;

fn treenest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treenest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn count(v: &Value, key: &str) -> usize {
    v[key].as_array().unwrap().len()
}

#[test]
fn build_tree_complex() {
    let out = treenest(&["build", "tree-complex", "--n", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(count(&v, "vertices"), 10);
    assert_eq!(count(&v, "facets"), 15);
}

#[test]
fn build_nested_complex_of_three_points() {
    let v = json(&treenest(&["build", "nested-complex", "--n", "3"]));
    assert_eq!(count(&v, "vertices"), 3);
    let facets = v["facets"].as_array().unwrap();
    assert_eq!(facets.len(), 3);
    assert!(facets.iter().all(|f| f.as_array().unwrap().len() == 1));
}

#[test]
fn build_partition_lattice() {
    let v = json(&treenest(&["build", "partition-lattice", "--n", "3"]));
    assert_eq!(count(&v, "elements"), 5);
}

#[test]
fn build_requires_k_for_k_kinds() {
    let out = treenest(&["build", "k-equal-trees", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn verify_reports() {
    let out = treenest(&["verify", "thm31", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], Value::Bool(true));

    let v = json(&treenest(&["verify", "betti", "--n", "5"]));
    assert_eq!(v["checks"][0]["actual"], "[0, 0, 24]");

    let v = json(&treenest(&["verify", "prop44", "--n", "5"]));
    assert_eq!(v["checks"][0]["actual"], "(24, 24, 24)");
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn exit_status_tracks_report() {
    for args in [
        &["verify", "remark3"][..],
        &["verify", "prop46", "--n", "4"],
        &["verify", "prop48", "--n", "4"],
        &["verify", "cor32", "--n", "4", "--field", "prime:46337"],
        &["verify", "prop56", "--n", "5", "--k", "3"],
        &["verify", "q52-evidence", "--n", "3"],
    ] {
        let out = treenest(args);
        let passed = json(&out)["passed"].as_bool().unwrap();
        assert_eq!(out.status.code(), Some(if passed { 0 } else { 1 }), "{args:?}");
        assert!(passed, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "thm99"][..],
        &["verify", "betti", "--field", "prime:10"],
        &["verify", "thm31", "--n", "7"],
        &["trace", "--n", "6"],
        &["build", "tree-complex", "--n", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(treenest(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn traces() {
    let t: SubdivisionTrace = serde_json::from_slice(&treenest(&["trace", "--n", "3"]).stdout).unwrap();
    assert!(t.steps.is_empty());

    let t: SubdivisionTrace = serde_json::from_slice(&treenest(&["trace", "--n", "4"]).stdout).unwrap();
    assert_eq!(t.steps.len(), 3);

    let t: SubdivisionTrace = serde_json::from_slice(&treenest(&["trace", "--n", "5"]).stdout).unwrap();
    let end = t.replay().unwrap();
    assert_eq!(end, t.end);
    assert_eq!(end.num_facets(), 180);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["build", "order-complex", "--n", "5"][..],
        &["build", "k-trees", "--n", "4", "--k", "2"],
        &["trace", "--n", "5"],
        &["verify", "prop44", "--n", "4"],
    ] {
        assert_eq!(treenest(args).stdout, treenest(args).stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("treenest-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t5.json");
    let out = treenest(&["build", "tree-complex", "--n", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(count(&v, "facets"), 105);
    std::fs::remove_dir_all(dir).unwrap();
}
